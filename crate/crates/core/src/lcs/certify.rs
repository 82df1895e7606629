//! Bracket bases of `B_2(A_n / <x^d + y^d>)` for two and three generators.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::cache::LcsCache;
use crate::error::{Error, Result};
use crate::ncpoly::{AlgebraPresentation, Mode, NCPoly, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCertificate {
    pub degree: usize,
    pub candidates: usize,
    pub quotient_dim: usize,
    pub independent: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    pub n: usize,
    pub d: usize,
    pub degrees: Vec<DegreeCertificate>,
}

impl CertificationReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|c| c.passed)
    }

    pub fn total_candidates(&self) -> usize {
        self.degrees.iter().map(|c| c.candidates).sum()
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.iter().map(|c| c.quotient_dim).sum()
    }
}

/// `x_0^e_0 x_1^e_1 ...` as an element of `A_n`.
fn power_word(n: usize, exps: &[(u8, usize)]) -> NCPoly {
    let letters: Vec<u8> = exps.iter().flat_map(|&(g, e)| std::iter::repeat_n(g, e)).collect();
    NCPoly::monomial(n, Word::new(letters), BigRational::one())
}

fn bracket(n: usize, a: &[(u8, usize)], b: &[(u8, usize)]) -> NCPoly {
    power_word(n, a).bracket(&power_word(n, b)).expect("same generator count")
}

/// `x^d + y^d` in `n` generators.
pub fn fermat(n: usize, d: usize) -> Result<AlgebraPresentation> {
    let p = power_word(n, &[(0, d)]).add(&power_word(n, &[(1, d)]))?;
    AlgebraPresentation::new(p, Mode::Graded)
}

/// `[x^i, y^j]` with `i + j = m` and `0 < i, j < d`.
pub fn n2_candidates(d: usize, m: usize) -> Vec<NCPoly> {
    (1..d).filter(|&i| m > i && m - i < d).map(|i| bracket(2, &[(0, i)], &[(1, m - i)])).collect()
}

/// The five bracket families in degree `m`, with `0 < i, j, k` and `j < d`
/// throughout; `i < d` for `[x^i, y^j]` and `[x^i z^k, y^j]` only.
pub fn n3_candidates(d: usize, m: usize) -> Vec<NCPoly> {
    let mut out = Vec::new();
    for i in 1..m {
        let j = m - i;
        if i < d && j < d {
            out.push(bracket(3, &[(0, i)], &[(1, j)]));
        }
    }
    for i in 1..m {
        out.push(bracket(3, &[(0, i)], &[(2, m - i)]));
    }
    for j in 1..d.min(m) {
        out.push(bracket(3, &[(1, j)], &[(2, m - j)]));
    }
    for i in 1..m {
        for j in 1..d {
            if i + j < m {
                out.push(bracket(3, &[(0, i), (1, j)], &[(2, m - i - j)]));
            }
        }
    }
    for i in 1..d {
        for j in 1..d {
            if i + j < m {
                out.push(bracket(3, &[(0, i), (2, m - i - j)], &[(1, j)]));
            }
        }
    }
    out
}

fn certify(cache: &mut LcsCache, n: usize, d: usize, m_max: usize, cands: impl Fn(usize) -> Vec<NCPoly>) -> Result<CertificationReport> {
    let mut degrees = Vec::new();
    for m in 2..=m_max {
        let c = cands(m);
        let quotient_dim = cache.b_dim(2, m)?;
        let independent = cache.independent_mod_lcs_plus_ideal(3, &c)?;
        degrees.push(DegreeCertificate { degree: m, candidates: c.len(), quotient_dim, independent, passed: independent && c.len() == quotient_dim });
    }
    Ok(CertificationReport { n, d, degrees })
}

/// Certifies `{[x^i, y^j]}` as a basis of `B_2(A_2 / <x^d + y^d>)` in each
/// degree `2..=m_max`.
pub fn certify_basis_n2(d: usize, m_max: usize) -> Result<CertificationReport> {
    if d < 2 {
        return Err(Error::RelationDegree(d));
    }
    if m_max < 2 * d - 2 {
        return Err(Error::Invalid(format!("m_max = {m_max} must be at least 2d - 2 = {}", 2 * d - 2)));
    }
    let mut cache = LcsCache::new(&fermat(2, d)?)?;
    certify(&mut cache, 2, d, m_max, |m| n2_candidates(d, m))
}

/// Certifies the five bracket families as a basis of `B_2(A_3 / <x^d + y^d>)`
/// in each degree `2..=m_max`.
pub fn certify_basis_n3(d: usize, m_max: usize) -> Result<CertificationReport> {
    if d < 2 {
        return Err(Error::RelationDegree(d));
    }
    let mut cache = LcsCache::new(&fermat(3, d)?)?;
    certify(&mut cache, 3, d, m_max, |m| n3_candidates(d, m))
}
