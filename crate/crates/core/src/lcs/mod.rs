//! Lower central series quotients of free algebras and one-relator quotients.
//!
//! [`LcsCache`] holds everything for one presentation; the free functions
//! below are one-shot conveniences that build a fresh cache.

mod cache;
mod certify;
mod filtered;
mod free;
mod grading;
mod table;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::Subspace;
use crate::ncpoly::{AlgebraPresentation, Mode, NCPoly, MAX_WORDS};

pub use cache::LcsCache;
pub use certify::{certify_basis_n2, certify_basis_n3, fermat, n2_candidates, n3_candidates, CertificationReport, DegreeCertificate};
pub use filtered::{FilteredPieces, FilteredReading};
pub use free::{Block, DegreeLayout, FreeLcs, LcsPiece};
pub use grading::ClassLattice;
pub use table::{filtered_table, graded_table, DimRecord, DimTable};

/// Size limits for one computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Largest degree of a graded request.
    pub max_degree: usize,
    /// Largest truncation level tried by filtered requests.
    pub max_truncation: usize,
    /// Largest number of words in a single degree.
    pub max_words: u64,
}

impl Limits {
    pub fn for_generators(n: usize) -> Limits {
        let (max_degree, max_truncation) = match n {
            0 | 1 => (32, 40),
            2 => (12, 16),
            3 => (9, 11),
            4 => (6, 8),
            _ => {
                let mut m = 1;
                while (n as u64).pow(m as u32 + 1) <= 4096 {
                    m += 1;
                }
                (m, m + 1)
            }
        };
        Limits { max_degree, max_truncation, max_words: MAX_WORDS }
    }
}

fn require_mode(pres: &AlgebraPresentation, mode: Mode) -> Result<()> {
    if pres.mode() != mode {
        return Err(Error::Invalid(format!("expected a {mode:?} presentation").to_lowercase()));
    }
    Ok(())
}

/// `L_i(A_n)[m]` in the deglex basis of degree-`m` words.
pub fn lcs_piece(n: usize, i: usize, m: usize) -> Result<Subspace> {
    FreeLcs::new(n)?.subspace(i, m)
}

/// `<P>[m]` in the deglex basis of degree-`m` words.
pub fn ideal_piece(p: &NCPoly, m: usize) -> Result<Subspace> {
    LcsCache::new(&AlgebraPresentation::new(p.clone(), Mode::Graded)?)?.ideal_subspace(m)
}

pub fn b_dim_free(n: usize, i: usize, m: usize) -> Result<usize> {
    let mut f = FreeLcs::new(n)?;
    Ok(f.rank(i, m)? - f.rank(i + 1, m)?)
}

/// `dim B_i(A_n / <P>)[m]`.
pub fn b_dim_quotient(pres: &AlgebraPresentation, i: usize, m: usize) -> Result<usize> {
    require_mode(pres, Mode::Graded)?;
    LcsCache::new(pres)?.b_dim(i, m)
}

/// `dim (A_n / <P>)[m]`.
pub fn algebra_dim(pres: &AlgebraPresentation, m: usize) -> Result<usize> {
    require_mode(pres, Mode::Graded)?;
    LcsCache::new(pres)?.algebra_dim(m)
}

/// Literal filtered pieces of `B_i` at level `m` with truncation `M`.
pub fn filtered_pieces(pres: &AlgebraPresentation, i: usize, m: usize, truncation: usize) -> Result<FilteredPieces> {
    require_mode(pres, Mode::Filtered)?;
    LcsCache::new(pres)?.filtered_pieces(i, m, truncation)
}

/// Associated graded dimension of `B_i(A_n / <P - 1>)` in degree `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GrDim {
    pub dim: usize,
    pub certified: bool,
}

pub fn gr_b_dim(pres: &AlgebraPresentation, i: usize, m: usize) -> Result<GrDim> {
    require_mode(pres, Mode::Filtered)?;
    let r = LcsCache::new(pres)?.filtered_b_dims(i, m)?;
    Ok(GrDim { dim: r.graded_parts()[m], certified: r.stabilized })
}

/// Whether `lhs - rhs` lies in `L_3 + <P>`, i.e. `lhs = rhs` in `B_2`.
pub fn check_b2_identity(pres: &AlgebraPresentation, lhs: &NCPoly, rhs: &NCPoly) -> Result<bool> {
    LcsCache::new(pres)?.in_lcs_plus_ideal(3, &lhs.sub(rhs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{quotient_dim, subspace_intersect, subspace_sum};
    use crate::ncpoly::parse;
    use num_rational::BigRational;

    fn graded(text: &str, n: usize) -> AlgebraPresentation {
        AlgebraPresentation::parse(text, n, Mode::Graded).unwrap()
    }

    /// `dim L_i / (L_{i+1} + (I ∩ L_i))` by literal subspace calculus.
    fn b_dim_literal(pres: &AlgebraPresentation, i: usize, m: usize) -> usize {
        let li = lcs_piece(pres.n(), i, m).unwrap();
        let lj = lcs_piece(pres.n(), i + 1, m).unwrap();
        let ideal = ideal_piece(pres.relation(), m).unwrap();
        let cap = subspace_intersect(&ideal, &li).unwrap();
        quotient_dim(&li, &subspace_sum(&lj, &cap).unwrap()).unwrap()
    }

    #[test]
    fn lcs_piece_examples() {
        assert_eq!(lcs_piece(2, 2, 2).unwrap().rank(), 1);
        assert_eq!(lcs_piece(2, 3, 2).unwrap().rank(), 0);
        for m in 0..6 {
            assert_eq!(lcs_piece(2, 1, m).unwrap().rank(), 1 << m);
        }
    }

    #[test]
    fn ideal_piece_examples() {
        let p = parse("x^2+y^2", 2).unwrap();
        assert_eq!(ideal_piece(&p, 2).unwrap().rank(), 1);
        assert_eq!(ideal_piece(&p, 3).unwrap().rank(), 4);
        assert_eq!(ideal_piece(&p, 1).unwrap().rank(), 0);
        let mut c = LcsCache::new(&graded("x^2+y^2", 2)).unwrap();
        for m in 0..7 {
            assert_eq!(c.ideal_rank(m).unwrap(), ideal_piece(&p, m).unwrap().rank());
        }
    }

    #[test]
    fn b_dim_free_examples() {
        for m in 2..8 {
            assert_eq!(b_dim_free(2, 2, m).unwrap(), m - 1);
        }
        assert_eq!(b_dim_free(2, 2, 1).unwrap(), 0);
        assert_eq!(b_dim_free(3, 2, 2).unwrap(), 3);
    }

    #[test]
    fn b_dim_quotient_examples() {
        let p = graded("x^2+y^2", 2);
        assert_eq!(b_dim_quotient(&p, 2, 2).unwrap(), 1);
        let total: usize = (1..=8).map(|m| b_dim_quotient(&p, 2, m).unwrap()).sum();
        assert_eq!(total, 1);
        assert_eq!(b_dim_quotient(&p, 3, 3).unwrap(), 2);
        assert_eq!(b_dim_quotient(&graded("x^3+y^3", 3), 3, 4).unwrap(), 24);
        assert!(b_dim_quotient(&p.with_mode(Mode::Filtered), 2, 2).is_err());
    }

    #[test]
    fn residue_route_matches_literal_intersection() {
        for (text, n, top) in [("x^2+y^2", 2, 6), ("x^2*y", 2, 6), ("xy-2yx+3y^2", 2, 6), ("x^3+y^3", 2, 6), ("x^2+y^2", 3, 4), ("xz+zy-yx", 3, 4)] {
            let pres = graded(text, n);
            let mut c = LcsCache::new(&pres).unwrap();
            for i in 1..=3 {
                for m in 0..=top {
                    assert_eq!(c.b_dim(i, m).unwrap(), b_dim_literal(&pres, i, m), "{text} n={n} B_{i}[{m}]");
                }
            }
        }
    }

    #[test]
    fn algebra_dim_examples() {
        let p = graded("x^2+y^2", 2);
        assert_eq!(algebra_dim(&p, 2).unwrap(), 3);
        assert_eq!(algebra_dim(&p, 3).unwrap(), 4);
    }

    #[test]
    fn quotient_never_exceeds_free() {
        let mut c = LcsCache::new(&graded("x^2 y - 3 y x y + z^3", 3)).unwrap();
        for i in 1..=3 {
            for m in 0..=6 {
                assert!(c.b_dim(i, m).unwrap() <= c.b_dim_free(i, m).unwrap());
            }
        }
    }

    #[test]
    fn degree_cap() {
        let mut c = LcsCache::new(&graded("x^2+y^2+z^2+w^2", 4)).unwrap();
        assert!(matches!(c.b_dim(2, 7), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn certification_small() {
        let r = certify_basis_n2(2, 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.total_candidates(), 1);
        let r3 = certify_basis_n2(3, 6).unwrap();
        assert!(r3.passed());
        let counts: Vec<usize> = r3.degrees.iter().map(|c| c.candidates).collect();
        assert_eq!(counts, vec![1, 2, 1, 0, 0]);
        assert!(certify_basis_n2(3, 3).is_err());
        let n3 = certify_basis_n3(2, 4).unwrap();
        assert!(n3.passed());
        assert_eq!(n3.degrees[0].candidates, 3);
        assert_eq!(n3.degrees[1].candidates, 5);
    }

    #[test]
    fn dependent_candidate_is_detected() {
        let mut c = LcsCache::new(&fermat(2, 2).unwrap()).unwrap();
        let x2y = parse("x^2", 2).unwrap().bracket(&parse("y", 2).unwrap()).unwrap();
        assert!(!c.independent_mod_lcs_plus_ideal(3, std::slice::from_ref(&x2y)).unwrap());
        assert!(c.in_lcs_plus_ideal(3, &x2y).unwrap());
    }

    #[test]
    fn identity_examples() {
        let pres = graded("x^2+y^2", 3);
        let br = |a: &str, b: &str| parse(a, 3).unwrap().bracket(&parse(b, 3).unwrap()).unwrap();
        assert!(check_b2_identity(&pres, &br("xy", "z"), &br("yx", "z")).unwrap());
        assert!(check_b2_identity(&pres, &br("xy", "z"), &br("x", "z")).is_err());
        assert!(!check_b2_identity(&pres, &br("x", "y"), &NCPoly::zero(3)).unwrap());
        assert!(check_b2_identity(&pres, &parse("x", 3).unwrap(), &parse("x^2", 3).unwrap()).is_err());
    }

    #[test]
    fn filtered_literal_matches_fast_route() {
        for text in ["x^2+y^2", "xyx", "x y - y x + x^2"] {
            let pres = AlgebraPresentation::parse(text, 2, Mode::Filtered).unwrap();
            let mut c = LcsCache::new(&pres).unwrap();
            for big_m in 3..=6 {
                let ranks2 = c.filtered_ranks(Some(2), big_m).unwrap();
                let ranks3 = c.filtered_ranks(Some(3), big_m).unwrap();
                for m in 0..=big_m.min(4) {
                    let pieces = filtered_literal(&mut c, 2, m, big_m);
                    assert_eq!(pieces, (ranks2[m], ranks3[m]), "{text} M={big_m} m={m}");
                }
            }
        }
    }

    fn filtered_literal(c: &mut LcsCache, i: usize, m: usize, big_m: usize) -> (usize, usize) {
        let (num, den) = c.filtered_subspaces(i, m, big_m).unwrap();
        (num.rank(), den.rank())
    }

    #[test]
    fn filtered_sum_of_squares() {
        let pres = AlgebraPresentation::parse("x^2+y^2", 2, Mode::Filtered).unwrap();
        let mut c = LcsCache::new(&pres).unwrap();
        let alg = c.filtered_algebra_dims(4).unwrap();
        assert!(alg.stabilized);
        let gr = alg.graded_parts();
        for (m, &g) in gr.iter().enumerate() {
            assert_eq!(g, c.algebra_dim(m).unwrap());
        }
        // x^2 = 1 - y^2 makes z = [x,y] anticommute with x and y, so
        // z = ([x,[x,z]] + [y,[y,z]]) / 4 lies in L_3 of the filtered algebra.
        let b2 = c.filtered_b_dims(2, 4).unwrap();
        assert!(b2.stabilized);
        assert_eq!(b2.graded_parts(), vec![0, 0, 0, 0, 0]);
        let z = parse("xy-yx", 2).unwrap();
        let x = parse("x", 2).unwrap();
        let y = parse("y", 2).unwrap();
        let rhs = x.bracket(&x.bracket(&z).unwrap()).unwrap().add(&y.bracket(&y.bracket(&z).unwrap()).unwrap()).unwrap();
        let diff = z.scale(&BigRational::from_integer(4.into())).sub(&rhs).unwrap();
        let (num, _) = c.filtered_subspaces(1, 4, 4).unwrap();
        let ideal_only = c.filtered_subspaces_ideal(4).unwrap();
        assert!(num.rank() > 0);
        assert!(crate::exactla::contains(&ideal_only, &filtered_vector(&diff, 4)).unwrap());
    }

    fn filtered_vector(p: &NCPoly, big_m: usize) -> crate::exactla::SparseVec {
        let n = p.n();
        let dim: usize = (0..=big_m).map(|k| n.pow(k as u32)).sum();
        let offset = |k: usize| ((k + 1)..=big_m).map(|j| n.pow(j as u32)).sum::<usize>();
        crate::exactla::SparseVec::new(dim, p.terms().map(|(w, c)| (offset(w.degree()) + w.index(n) as usize, c.clone()))).unwrap()
    }

    #[test]
    fn gr_b_dim_trivial_degree() {
        let pres = AlgebraPresentation::parse("x^2+y^2", 2, Mode::Filtered).unwrap();
        assert_eq!(gr_b_dim(&pres, 2, 1).unwrap(), GrDim { dim: 0, certified: true });
        assert_eq!(filtered_pieces(&pres, 2, 1, 3).unwrap().numerator.rank(), 0);
    }
}
