//! Filtered quotients `A_n / <P - 1>`, filtered by word length.
//!
//! The ideal is approximated by `J_M = span{u (P - 1) v : |u| + |v| + d <= M}`
//! and the truncation `M` grows in steps of `d` until the requested readings
//! repeat three times in a row.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::cache::{LcsCache, Level};
use crate::error::{Error, Result};
use crate::exactla::{span, subspace_intersect, subspace_sum, SparseVec, Subspace};
use crate::ncpoly::{enumerate_words, NCPoly};

/// Filtered dimensions for `m = 0..=m_max` at the last truncation tried.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilteredReading {
    pub values: Vec<usize>,
    pub truncation: usize,
    pub stabilized: bool,
}

impl FilteredReading {
    /// Successive differences: dimensions of the associated graded pieces.
    pub fn graded_parts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.values.len());
        let mut prev = 0;
        for &v in &self.values {
            out.push(v - prev);
            prev = v;
        }
        out
    }
}

/// Literal filtered subspaces inside the words of length `<= M`.
#[derive(Clone, Debug)]
pub struct FilteredPieces {
    pub numerator: Subspace,
    pub denominator: Subspace,
    pub truncation: usize,
    pub stabilized: bool,
}

/// Largest ambient the literal route will build.
const LITERAL_MAX_DIM: usize = 1 << 12;

impl LcsCache {
    fn stabilize(&mut self, m_max: usize, mut reading: impl FnMut(&mut LcsCache, usize) -> Result<Vec<usize>>) -> Result<FilteredReading> {
        let d = self.presentation().degree();
        let cap = self.limits().max_truncation;
        let mut big_m = m_max + d;
        if big_m > cap {
            return Err(Error::CapExceeded(format!("truncation {big_m} exceeds the cap of {cap}")));
        }
        let mut history: Vec<Vec<usize>> = Vec::new();
        let mut last_m = big_m;
        while big_m <= cap {
            history.push(reading(self, big_m)?);
            last_m = big_m;
            let k = history.len();
            if k >= 3 && history[k - 1] == history[k - 2] && history[k - 2] == history[k - 3] {
                return Ok(FilteredReading { values: history.pop().expect("nonempty"), truncation: big_m, stabilized: true });
            }
            big_m += d;
        }
        Ok(FilteredReading { values: history.pop().expect("nonempty"), truncation: last_m, stabilized: false })
    }

    fn level_ranks(&mut self, level: Level, big_m: usize, m_max: usize) -> Result<Vec<usize>> {
        Ok(self.filtered_ranks(level, big_m)?[..=m_max].to_vec())
    }

    /// `dim F_m B_i` of the filtered quotient for `m = 0..=m_max`.
    pub fn filtered_b_dims(&mut self, i: usize, m_max: usize) -> Result<FilteredReading> {
        if i == 0 {
            return Err(Error::Invalid("the lower central series starts at i = 1".into()));
        }
        self.stabilize(m_max, |c, big_m| {
            let hi = c.level_ranks(Some(i), big_m, m_max)?;
            let lo = c.level_ranks(Some(i + 1), big_m, m_max)?;
            Ok(hi.iter().zip(&lo).map(|(a, b)| a - b).collect())
        })
    }

    /// `dim F_m A` of the filtered quotient algebra for `m = 0..=m_max`.
    pub fn filtered_algebra_dims(&mut self, m_max: usize) -> Result<FilteredReading> {
        let n = self.presentation().n();
        self.stabilize(m_max, |c, big_m| {
            let ranks = c.level_ranks(None, big_m, m_max)?;
            let mut words = 0usize;
            Ok(ranks
                .iter()
                .enumerate()
                .map(|(k, r)| {
                    words += n.pow(k as u32);
                    words - r
                })
                .collect())
        })
    }

    /// Literal `(L_i + J_M) ∩ V_{<=m}` and `(L_{i+1} + J_M) ∩ V_{<=m}`, with
    /// columns ordered by descending length and then deglex.
    pub fn filtered_pieces(&mut self, i: usize, m: usize, big_m: usize) -> Result<FilteredPieces> {
        let (numerator, denominator) = self.filtered_subspaces(i, m, big_m)?;
        let stabilized = self.filtered_b_dims(i, m)?.stabilized;
        Ok(FilteredPieces { numerator, denominator, truncation: big_m, stabilized })
    }

    pub(crate) fn filtered_subspaces(&mut self, i: usize, m: usize, big_m: usize) -> Result<(Subspace, Subspace)> {
        if big_m < m {
            return Err(Error::Invalid(format!("truncation {big_m} is below the degree {m}")));
        }
        let n = self.presentation().n();
        let offsets = length_offsets(n, big_m);
        let dim = offsets[0] + 1;
        if dim > LITERAL_MAX_DIM {
            return Err(Error::CapExceeded(format!("literal filtered ambient of dimension {dim}")));
        }
        let col = |k: usize, idx: u64| offsets[k] + idx as usize;
        let ideal = self.filtered_subspaces_ideal(big_m)?;
        let low = span(dim, &(0..=m).flat_map(|k| (0..n.pow(k as u32) as u64).map(move |w| (k, w))).map(|(k, w)| SparseVec::unit(dim, col(k, w))).collect::<Vec<_>>())?;
        let mut parts = Vec::with_capacity(2);
        for j in [i, i + 1] {
            let mut rows = Vec::new();
            for k in 0..=big_m {
                let s = self.free().subspace(j, k)?;
                for b in s.basis() {
                    rows.push(SparseVec::new(dim, b.entries().iter().map(|(c, v)| (col(k, *c as u64), v.clone())))?);
                }
            }
            let total = subspace_sum(&span(dim, &rows)?, &ideal)?;
            parts.push(subspace_intersect(&total, &low)?);
        }
        let denominator = parts.pop().expect("two parts");
        let numerator = parts.pop().expect("two parts");
        Ok((numerator, denominator))
    }

    /// `J_M` in the same coordinates as [`LcsCache::filtered_pieces`].
    pub(crate) fn filtered_subspaces_ideal(&mut self, big_m: usize) -> Result<Subspace> {
        let n = self.presentation().n();
        let offsets = length_offsets(n, big_m);
        let dim = offsets[0] + 1;
        if dim > LITERAL_MAX_DIM {
            return Err(Error::CapExceeded(format!("literal filtered ambient of dimension {dim}")));
        }
        let rel = self.presentation().with_mode(crate::ncpoly::Mode::Filtered).working_relation();
        let d = self.presentation().degree();
        let mut rows = Vec::new();
        if big_m >= d {
            for total in 0..=big_m - d {
                for a in 0..=total {
                    for u in enumerate_words(n, a)? {
                        for v in enumerate_words(n, total - a)? {
                            let one = BigRational::one();
                            let row = NCPoly::monomial(n, u.clone(), one.clone()).nc_mul(&rel)?.nc_mul(&NCPoly::monomial(n, v, one))?;
                            rows.push(SparseVec::new(dim, row.terms().map(|(w, c)| (offsets[w.degree()] + w.index(n) as usize, c.clone())))?);
                        }
                    }
                }
            }
        }
        span(dim, &rows)
    }
}

/// First column of each length `k <= M` when longer words come first.
fn length_offsets(n: usize, big_m: usize) -> Vec<usize> {
    let mut offsets = vec![0; big_m + 1];
    let mut acc = 0;
    for k in (0..=big_m).rev() {
        offsets[k] = acc;
        acc += n.pow(k as u32);
    }
    offsets
}
