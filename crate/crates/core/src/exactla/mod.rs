//! Exact rational linear algebra over fixed finite coordinate spaces.
//!
//! Subspaces are stored in reduced row echelon form, which is unique, so two
//! [`Subspace`] values are equal exactly when they describe the same space.

pub mod echelon;
pub mod int;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
pub use echelon::{Echelon, IntRow};
pub use int::Int;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, BigRational)>,
}

impl SparseVec {
    /// Builds a vector from unordered `(index, value)` pairs; duplicates are summed.
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (usize, BigRational)>) -> Result<SparseVec> {
        let mut v: Vec<(usize, BigRational)> = entries.into_iter().collect();
        if let Some((i, _)) = v.iter().find(|(i, _)| *i >= dim) {
            return Err(Error::DimensionMismatch(*i, dim));
        }
        v.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, BigRational)> = Vec::with_capacity(v.len());
        for (i, x) in v {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += x,
                _ => out.push((i, x)),
            }
            if out.last().is_some_and(|e| e.1.is_zero()) {
                out.pop();
            }
        }
        Ok(SparseVec { dim, entries: out })
    }

    pub fn from_ints(dim: usize, entries: impl IntoIterator<Item = (usize, i64)>) -> Result<SparseVec> {
        SparseVec::new(dim, entries.into_iter().map(|(i, x)| (i, BigRational::from_integer(x.into()))))
    }

    pub fn zero(dim: usize) -> SparseVec {
        SparseVec { dim, entries: Vec::new() }
    }

    pub fn unit(dim: usize, i: usize) -> SparseVec {
        assert!(i < dim);
        SparseVec { dim, entries: vec![(i, BigRational::one())] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, BigRational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> BigRational {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    /// Primitive integer multiple of this vector.
    pub fn to_int_row(&self) -> IntRow {
        let mut l = BigInt::one();
        for (_, x) in &self.entries {
            l = num_integer::Integer::lcm(&l, x.denom());
        }
        self.entries
            .iter()
            .map(|(i, x)| (*i as u32, Int::from_big(x.numer() * (&l / x.denom()))))
            .collect()
    }

    pub(crate) fn from_int_row(dim: usize, row: &[(u32, Int)], scale: &Int) -> SparseVec {
        let s = scale.to_big();
        SparseVec {
            dim,
            entries: row
                .iter()
                .map(|(c, v)| (*c as usize, BigRational::new(v.to_big(), s.clone())))
                .collect(),
        }
    }
}

/// A subspace of `Q^dim` in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    dim: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(dim: usize) -> Subspace {
        Subspace { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Subspace {
        Subspace::from_echelon(&Echelon::full(dim))
    }

    /// Reads off the reduced echelon basis; `e` is reduced first if needed.
    pub fn from_echelon(e: &Echelon) -> Subspace {
        let owned;
        let e = if e.is_reduced() {
            e
        } else {
            let mut c = e.clone();
            c.make_reduced();
            owned = c;
            &owned
        };
        let mut rows = Vec::with_capacity(e.rank());
        let mut pivots = Vec::with_capacity(e.rank());
        for r in e.sorted_rows() {
            pivots.push(r[0].0 as usize);
            rows.push(SparseVec::from_int_row(e.ncols(), r, &r[0].1));
        }
        Subspace { dim: e.ncols(), rows, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub(crate) fn to_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.dim);
        for r in &self.rows {
            e.insert(r.to_int_row());
        }
        e.make_reduced();
        e
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(a, b));
    }
    Ok(())
}

/// Inserts rows sparsest-first within each leading column so the result does
/// not depend on input order beyond that tie-break.
fn insert_sorted(e: &mut Echelon, mut rows: Vec<IntRow>) {
    rows.retain(|r| !r.is_empty());
    rows.sort_by(|a, b| (a[0].0, a.len()).cmp(&(b[0].0, b.len())));
    for r in rows {
        e.insert(r);
    }
}

/// Reduced echelon basis of the span of `vectors` inside `Q^dim`.
pub fn span(dim: usize, vectors: &[SparseVec]) -> Result<Subspace> {
    for v in vectors {
        check_dims(dim, v.dim())?;
    }
    let mut e = Echelon::new(dim);
    insert_sorted(&mut e, vectors.iter().map(SparseVec::to_int_row).collect());
    Ok(Subspace::from_echelon(&e))
}

pub fn subspace_sum(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    check_dims(u.dim, v.dim)?;
    let mut e = u.to_echelon();
    insert_sorted(&mut e, v.rows.iter().map(SparseVec::to_int_row).collect());
    Ok(Subspace::from_echelon(&e))
}

/// Zassenhaus intersection: eliminate `[u | u]` and `[v | 0]` in the doubled
/// space; rows whose left half vanishes carry a basis of `U ∩ V`.
pub fn subspace_intersect(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    check_dims(u.dim, v.dim)?;
    let n = u.dim as u32;
    let mut e = Echelon::new(2 * u.dim);
    let mut rows = Vec::with_capacity(u.rank() + v.rank());
    for r in &u.rows {
        let left = r.to_int_row();
        let right = left.iter().map(|(c, x)| (c + n, x.clone()));
        rows.push(left.iter().cloned().chain(right).collect());
    }
    for r in &v.rows {
        rows.push(r.to_int_row());
    }
    insert_sorted(&mut e, rows);
    let mut out = Echelon::new(u.dim);
    for r in e.rows() {
        if r[0].0 >= n {
            out.insert(r.iter().map(|(c, x)| (c - n, x.clone())).collect());
        }
    }
    Ok(Subspace::from_echelon(&out))
}

pub fn contains(u: &Subspace, v: &SparseVec) -> Result<bool> {
    check_dims(u.dim, v.dim())?;
    let mut rest = v.entries.clone();
    // RREF rows have a unit pivot, so each pivot column is cleared in one step.
    for (row, &p) in u.rows.iter().zip(&u.pivots) {
        let Ok(k) = rest.binary_search_by_key(&p, |e| e.0) else { continue };
        let coef = rest[k].1.clone();
        let scaled: Vec<(usize, BigRational)> =
            row.entries.iter().map(|(i, x)| (*i, -(x * &coef))).collect();
        rest = SparseVec::new(u.dim, rest.into_iter().chain(scaled))?.entries;
    }
    Ok(rest.is_empty())
}

/// `dim U - dim W` for `W ⊆ U`; non-nested input is an error.
pub fn quotient_dim(u: &Subspace, w: &Subspace) -> Result<usize> {
    check_dims(u.dim, w.dim)?;
    for b in &w.rows {
        if !contains(u, b)? {
            return Err(Error::NotNested);
        }
    }
    Ok(u.rank() - w.rank())
}

/// Whether `cands` stay linearly independent modulo `w`.
pub fn independent_mod(w: &Subspace, cands: &[SparseVec]) -> Result<bool> {
    for c in cands {
        check_dims(w.dim, c.dim())?;
    }
    let mut e = w.to_echelon();
    for c in cands {
        if !e.insert(c.to_int_row()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(dim: usize, xs: &[i64]) -> SparseVec {
        SparseVec::from_ints(dim, xs.iter().enumerate().map(|(i, &x)| (i, x))).unwrap()
    }

    fn e(dim: usize, i: usize) -> SparseVec {
        SparseVec::unit(dim, i)
    }

    #[test]
    fn span_examples() {
        assert_eq!(span(2, &[v(2, &[1, 0]), v(2, &[2, 0])]).unwrap().rank(), 1);
        assert_eq!(span(2, &[]).unwrap().rank(), 0);
        assert_eq!(span(2, &[v(2, &[1, 2]), v(2, &[2, 4]), v(2, &[0, 1])]).unwrap().rank(), 2);
        assert!(span(2, &[v(3, &[1, 0, 0])]).is_err());
    }

    #[test]
    fn sum_examples() {
        let u = span(3, &[v(3, &[1, 1, 0])]).unwrap();
        let z = Subspace::zero(3);
        assert_eq!(subspace_sum(&u, &z).unwrap(), u);
        assert_eq!(subspace_sum(&u, &u).unwrap(), u);
        let a = span(3, &[e(3, 0)]).unwrap();
        let b = span(3, &[e(3, 1)]).unwrap();
        assert_eq!(subspace_sum(&a, &b).unwrap().rank(), 2);
        assert!(subspace_sum(&a, &Subspace::zero(4)).is_err());
    }

    #[test]
    fn intersect_examples() {
        let u = span(3, &[v(3, &[1, 2, 3]), v(3, &[0, 1, 1])]).unwrap();
        assert_eq!(subspace_intersect(&u, &u).unwrap(), u);
        let a = span(3, &[e(3, 0)]).unwrap();
        let b = span(3, &[e(3, 1)]).unwrap();
        assert_eq!(subspace_intersect(&a, &b).unwrap().rank(), 0);
        let c = span(3, &[e(3, 0), e(3, 1)]).unwrap();
        let d = span(3, &[e(3, 1), e(3, 2)]).unwrap();
        assert_eq!(subspace_intersect(&c, &d).unwrap(), span(3, &[e(3, 1)]).unwrap());
    }

    #[test]
    fn contains_examples() {
        let u = span(2, &[v(2, &[1, 1])]).unwrap();
        assert!(contains(&u, &SparseVec::zero(2)).unwrap());
        assert!(!contains(&Subspace::zero(2), &e(2, 0)).unwrap());
        assert!(contains(&u, &v(2, &[2, 2])).unwrap());
        assert!(!contains(&u, &v(2, &[2, 1])).unwrap());
    }

    #[test]
    fn quotient_dim_examples() {
        let u = span(3, &[e(3, 0), e(3, 1)]).unwrap();
        assert_eq!(quotient_dim(&u, &u).unwrap(), 0);
        assert_eq!(quotient_dim(&u, &Subspace::zero(3)).unwrap(), 2);
        assert_eq!(quotient_dim(&u, &span(3, &[e(3, 0)]).unwrap()).unwrap(), 1);
        assert_eq!(quotient_dim(&u, &span(3, &[e(3, 2)]).unwrap()), Err(Error::NotNested));
    }

    #[test]
    fn independent_mod_examples() {
        let z = Subspace::zero(3);
        let a = span(3, &[e(3, 0)]).unwrap();
        assert!(independent_mod(&z, &[e(3, 0)]).unwrap());
        assert!(!independent_mod(&a, &[e(3, 0)]).unwrap());
        assert!(independent_mod(&a, &[e(3, 1), e(3, 2)]).unwrap());
    }

    #[test]
    fn rational_pivots_are_normalized() {
        let s = span(2, &[v(2, &[3, 1])]).unwrap();
        assert_eq!(s.basis()[0].get(0), BigRational::one());
        assert_eq!(s.basis()[0].get(1), BigRational::new(1.into(), 3.into()));
    }
}
