//! Commutative side: `Ω⁰ = Q[x]/<P_ab>`, the Kähler differentials `Ω¹`, the
//! de Rham map between them and the closed-form series they are compared to.
//!
//! Every piece lives in degree `m` with `deg dx_i = 1`, so `Ω¹[m]` has one
//! block of degree-`(m - 1)` monomials per generator.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{span, SparseVec, Subspace};
use crate::hseries::{series_arith, HilbertSeries, IntPoly, QPoly, SeriesOp};
use crate::ncpoly::{AlgebraPresentation, CommPoly, Mode};

/// Largest coordinate space a Kähler piece may use.
pub const MAX_AMBIENT: usize = 1 << 15;

/// Random planes tried by [`squarefree_check`] for three or more variables.
pub const DEFAULT_PLANES: usize = 5;

/// Degree-`m` monomials in `n` variables, lexicographically descending.
pub fn monomials(n: usize, m: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, m as u32, &mut Vec::with_capacity(n), &mut out);
    out
}

fn monomial_count(n: usize, m: usize) -> usize {
    // C(m + n - 1, n - 1)
    if n == 0 {
        return usize::from(m == 0);
    }
    let mut c: u128 = 1;
    for k in 1..n as u128 {
        c = c * (m as u128 + k) / k;
    }
    usize::try_from(c).unwrap_or(usize::MAX)
}

/// A graded piece of `Ω⁰` or `Ω¹`: relations inside the monomial coordinates.
#[derive(Clone, Debug)]
pub struct OmegaPiece {
    pub degree: usize,
    pub relations: Subspace,
    pub dim: usize,
}

impl OmegaPiece {
    pub fn ambient_dim(&self) -> usize {
        self.relations.ambient_dim()
    }
}

/// `df` as its `dx_i` coefficients.
pub fn d_map(f: &CommPoly) -> Vec<CommPoly> {
    (0..f.n()).map(|i| f.partial(i).expect("index in range")).collect()
}

fn mul_monomial(f: &CommPoly, u: &[u32]) -> CommPoly {
    CommPoly::from_terms(f.n(), f.terms().map(|(e, c)| (e.iter().zip(u).map(|(a, b)| a + b).collect(), c.clone())))
        .expect("matching variable count")
}

/// Coordinates of one graded degree: monomial blocks.
struct Frame {
    index: HashMap<Vec<u32>, usize>,
    block: usize,
    blocks: usize,
}

impl Frame {
    fn new(n: usize, deg: usize, blocks: usize) -> Result<Frame> {
        let block = monomial_count(n, deg);
        if block.saturating_mul(blocks) > MAX_AMBIENT {
            return Err(Error::CapExceeded(format!("{} coordinates in degree {deg}", block.saturating_mul(blocks))));
        }
        let index = monomials(n, deg).into_iter().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(Frame { index, block, blocks })
    }

    fn dim(&self) -> usize {
        self.block * self.blocks
    }

    fn vector(&self, parts: &[CommPoly]) -> SparseVec {
        let mut entries = Vec::new();
        for (b, f) in parts.iter().enumerate() {
            for (e, c) in f.terms() {
                entries.push((b * self.block + self.index[e], c.clone()));
            }
        }
        SparseVec::new(self.dim(), entries).expect("coordinates in range")
    }
}

/// Everything the Kähler side needs for one presentation.
#[derive(Clone, Debug)]
pub struct Kahler {
    n: usize,
    p: CommPoly,
    d: usize,
}

/// Dimensions of the commutative pieces in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KahlerDims {
    pub degree: usize,
    pub omega0: usize,
    pub omega1: usize,
    pub image: usize,
    pub kernel: usize,
    pub quotient: usize,
}

impl Kahler {
    pub fn new(pres: &AlgebraPresentation) -> Result<Kahler> {
        if pres.mode() != Mode::Graded {
            return Err(Error::Invalid("expected a graded presentation".into()));
        }
        Ok(Kahler { n: pres.n(), p: pres.relation().abelianize(), d: pres.degree() })
    }

    /// Abelianized relation.
    pub fn relation(&self) -> &CommPoly {
        &self.p
    }

    fn omega0_rows(&self, frame: &Frame, m: usize) -> Vec<SparseVec> {
        if m < self.d || self.p.is_zero() {
            return Vec::new();
        }
        monomials(self.n, m - self.d).iter().map(|u| frame.vector(&[mul_monomial(&self.p, u)])).collect()
    }

    fn omega1_rows(&self, frame: &Frame, m: usize) -> Vec<SparseVec> {
        let mut rows = Vec::new();
        if self.p.is_zero() {
            return rows;
        }
        let dp = d_map(&self.p);
        if m >= self.d {
            for u in monomials(self.n, m - self.d) {
                rows.push(frame.vector(&dp.iter().map(|f| mul_monomial(f, &u)).collect::<Vec<_>>()));
            }
        }
        if m > self.d {
            let zero = CommPoly::zero(self.n);
            for u in monomials(self.n, m - 1 - self.d) {
                let up = mul_monomial(&self.p, &u);
                for i in 0..self.n {
                    let mut parts = vec![zero.clone(); self.n];
                    parts[i] = up.clone();
                    rows.push(frame.vector(&parts));
                }
            }
        }
        rows
    }

    pub fn omega0_piece(&self, m: usize) -> Result<OmegaPiece> {
        let frame = Frame::new(self.n, m, 1)?;
        let relations = span(frame.dim(), &self.omega0_rows(&frame, m))?;
        Ok(OmegaPiece { degree: m, dim: frame.dim() - relations.rank(), relations })
    }

    pub fn omega1_piece(&self, m: usize) -> Result<OmegaPiece> {
        if m == 0 {
            return Ok(OmegaPiece { degree: 0, relations: Subspace::zero(0), dim: 0 });
        }
        let frame = Frame::new(self.n, m - 1, self.n)?;
        let relations = span(frame.dim(), &self.omega1_rows(&frame, m))?;
        Ok(OmegaPiece { degree: m, dim: frame.dim() - relations.rank(), relations })
    }

    /// All dimensions in degree `m`; the image of `d` is measured inside `Ω¹[m]`.
    pub fn dims(&self, m: usize) -> Result<KahlerDims> {
        let omega0 = self.omega0_piece(m)?.dim;
        if m == 0 {
            return Ok(KahlerDims { degree: 0, omega0, omega1: 0, image: 0, kernel: omega0, quotient: 0 });
        }
        let frame = Frame::new(self.n, m - 1, self.n)?;
        let mut rows = self.omega1_rows(&frame, m);
        let rel_rank = span(frame.dim(), &rows)?.rank();
        rows.extend(monomials(self.n, m).into_iter().map(|e| {
            let f = CommPoly::from_terms(self.n, [(e, BigRational::one())]).expect("matching variable count");
            frame.vector(&d_map(&f))
        }));
        let image = span(frame.dim(), &rows)?.rank() - rel_rank;
        let omega1 = frame.dim() - rel_rank;
        Ok(KahlerDims { degree: m, omega0, omega1, image, kernel: omega0 - image, quotient: omega1 - image })
    }
}

pub fn omega0_dim(pres: &AlgebraPresentation, m: usize) -> Result<usize> {
    Ok(Kahler::new(pres)?.omega0_piece(m)?.dim)
}

pub fn omega1_dim(pres: &AlgebraPresentation, m: usize) -> Result<usize> {
    Ok(Kahler::new(pres)?.omega1_piece(m)?.dim)
}

/// `dim (Ω¹ / dΩ⁰)[m]`.
pub fn omega_quotient_dim(pres: &AlgebraPresentation, m: usize) -> Result<usize> {
    Ok(Kahler::new(pres)?.dims(m)?.quotient)
}

/// `dim ker(d: Ω⁰[m] -> Ω¹[m])`.
pub fn kernel_of_d_dim(pres: &AlgebraPresentation, m: usize) -> Result<usize> {
    Ok(Kahler::new(pres)?.dims(m)?.kernel)
}

/// Closed forms for `P = x^d + y^d` style relations in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub n: usize,
    pub d: usize,
    /// Series of `Ω¹ / dΩ⁰`.
    pub h_omega: HilbertSeries,
    /// Series of `B_2`; equal to `h_omega` for `n = 2, 3` and conjectural for `n = 4`.
    pub h_b2: HilbertSeries,
    pub conjectural: bool,
}

/// `h_Ω = ((1-t)^n - 1 + n t - n t^{d+1} + t^{2d}) / (1-t)^n` for `n` in `2..=4`,
/// plus `(t (1 - t^{d-1}) / (1 - t))^4` on the `B_2` side when `n = 4`.
pub fn closed_form_series(n: usize, d: usize) -> Result<ClosedForm> {
    if !(2..=4).contains(&n) {
        return Err(Error::Unsupported(n));
    }
    if d < 2 {
        return Err(Error::RelationDegree(d));
    }
    let den = IntPoly::one_minus_t_pow(1).pow(n);
    let num = den
        .sub(&IntPoly::one())
        .add(&IntPoly::monomial(1, n as i64))
        .sub(&IntPoly::monomial(d + 1, n as i64))
        .add(&IntPoly::monomial(2 * d, 1));
    let h_omega = HilbertSeries::new(num, den)?;
    if n < 4 {
        return Ok(ClosedForm { n, d, h_b2: h_omega.clone(), h_omega, conjectural: false });
    }
    let base = HilbertSeries::new(IntPoly::monomial(1, 1).sub(&IntPoly::monomial(d, 1)), IntPoly::one_minus_t_pow(1))?;
    let sq = series_arith(&base, &base, SeriesOp::Mul);
    let fourth = series_arith(&sq, &sq, SeriesOp::Mul);
    let h_b2 = series_arith(&h_omega, &fourth, SeriesOp::Add);
    Ok(ClosedForm { n, d, h_omega, h_b2, conjectural: true })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquarefreeVerdict {
    Squarefree,
    RepeatedFactor,
    Undetermined,
}

/// Binary form `Σ c_k x^k y^{deg-k}` given by `coeffs[k]`; zero forms are excluded.
fn binary_form_squarefree(coeffs: &[BigRational]) -> bool {
    // power of y dividing the form
    let k = coeffs.iter().rev().position(|c| !c.is_zero()).expect("nonzero form");
    if k > 1 {
        return false;
    }
    let g = QPoly::new(coeffs.to_vec());
    g.gcd(&g.derivative()).degree().unwrap_or(0) == 0
}

/// Whether a homogeneous polynomial has a repeated factor over `C`.
///
/// Two variables are decided exactly. With three or more the form is
/// restricted to `planes` random planes drawn from `seed`; a restriction that
/// vanishes identically makes the verdict undetermined.
pub fn squarefree_check(p: &CommPoly, planes: usize, seed: u64) -> Result<SquarefreeVerdict> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let deg = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let n = p.n();
    if deg <= 1 {
        return Ok(SquarefreeVerdict::Squarefree);
    }
    if n == 1 {
        return Ok(SquarefreeVerdict::RepeatedFactor);
    }
    let binary = |f: &CommPoly| -> Vec<BigRational> { (0..=deg as u32).map(|k| f.coeff(&[k, deg as u32 - k])).collect() };
    if n == 2 {
        let verdict = if binary_form_squarefree(&binary(p)) { SquarefreeVerdict::Squarefree } else { SquarefreeVerdict::RepeatedFactor };
        return Ok(verdict);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degenerate = false;
    for _ in 0..planes {
        let images: Vec<CommPoly> = (0..n)
            .map(|_| {
                let mut coef = || BigRational::from_integer(BigInt::from(rng.gen_range(-1000i64..=1000)));
                CommPoly::from_terms(2, [(vec![1, 0], coef()), (vec![0, 1], coef())]).expect("two variables")
            })
            .collect();
        let r = p.substitute(&images);
        if r.is_zero() {
            degenerate = true;
            continue;
        }
        if !binary_form_squarefree(&binary(&r)) {
            return Ok(SquarefreeVerdict::RepeatedFactor);
        }
    }
    Ok(if degenerate || planes == 0 { SquarefreeVerdict::Undetermined } else { SquarefreeVerdict::Squarefree })
}
