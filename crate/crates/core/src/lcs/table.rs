use serde::Serialize;

use super::cache::LcsCache;
use crate::error::Result;
use crate::ncpoly::Mode;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimRecord {
    pub i: usize,
    pub degree: usize,
    pub dim: usize,
    /// Exact for graded entries; for filtered ones, whether the truncation
    /// readings stabilized.
    pub certified: bool,
}

/// `dim B_i[m]` for a set of `(i, m)`, with the settings that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimTable {
    pub n: usize,
    pub relation: String,
    pub mode: Mode,
    /// Largest truncation level used by filtered entries.
    pub truncation: Option<usize>,
    pub records: Vec<DimRecord>,
}

impl DimTable {
    pub fn get(&self, i: usize, degree: usize) -> Option<&DimRecord> {
        self.records.iter().find(|r| r.i == i && r.degree == degree)
    }

    /// Dimensions of `B_i` in degrees `1..=max`, in order.
    pub fn row(&self, i: usize) -> Vec<usize> {
        self.records.iter().filter(|r| r.i == i).map(|r| r.dim).collect()
    }
}

/// Graded dimensions of `B_i(A_n / <P>)` for each `i` in `is` and degrees `1..=max_degree`.
pub fn graded_table(cache: &mut LcsCache, is: &[usize], max_degree: usize) -> Result<DimTable> {
    let mut records = Vec::new();
    for &i in is {
        for m in 1..=max_degree {
            records.push(DimRecord { i, degree: m, dim: cache.b_dim(i, m)?, certified: true });
        }
    }
    let pres = cache.presentation();
    Ok(DimTable { n: pres.n(), relation: pres.relation().to_string(), mode: Mode::Graded, truncation: None, records })
}

/// Associated graded dimensions of `B_i(A_n / <P - 1>)`.
pub fn filtered_table(cache: &mut LcsCache, is: &[usize], max_degree: usize) -> Result<DimTable> {
    let mut records = Vec::new();
    let mut truncation = 0;
    for &i in is {
        let reading = cache.filtered_b_dims(i, max_degree)?;
        truncation = truncation.max(reading.truncation);
        for (m, dim) in reading.graded_parts().into_iter().enumerate().skip(1) {
            records.push(DimRecord { i, degree: m, dim, certified: reading.stabilized });
        }
    }
    let pres = cache.presentation();
    Ok(DimTable { n: pres.n(), relation: pres.relation().to_string(), mode: Mode::Filtered, truncation: Some(truncation), records })
}
