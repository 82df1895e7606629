//! Rational generating functions `num(t) / den(t)` with integer coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Integer polynomial in `t`, lowest degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly(Vec::new())
    }

    pub fn one() -> IntPoly {
        IntPoly::from_i64(&[1])
    }

    /// `c * t^k`
    pub fn monomial(k: usize, c: i64) -> IntPoly {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::from(c);
        IntPoly::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.0.len().max(other.0.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }

    pub fn pow(&self, k: usize) -> IntPoly {
        (0..k).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    /// `(1 - t)^k`
    pub fn one_minus_t_pow(k: usize) -> IntPoly {
        IntPoly::from_i64(&[1, -1]).pow(k)
    }

    fn to_q(&self) -> QPoly {
        QPoly::new(self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }
}

/// Univariate polynomial over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(Vec<BigRational>);

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> QPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.0.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(BigInt::from(k))).collect(),
        )
    }

    /// Quotient and remainder of Euclidean division; `other` must be nonzero.
    pub fn div_rem(&self, other: &QPoly) -> (QPoly, QPoly) {
        let dv = other.degree().expect("division by zero polynomial");
        let lead = other.0[dv].clone();
        let mut rem = self.0.clone();
        let mut quot = vec![BigRational::zero(); self.0.len().saturating_sub(dv).max(1)];
        while rem.len() > dv && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = &rem[k] / &lead;
            if !c.is_zero() {
                for (j, b) in other.0.iter().enumerate() {
                    rem[k - dv + j] -= &c * b;
                }
                quot[k - dv] = c;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.0.last().cloned() {
            Some(l) => QPoly(a.0.iter().map(|c| c / &l).collect()),
            None => a,
        }
    }
}

/// `h(t) = num(t) / den(t)` with `den(0) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    num: IntPoly,
    den: IntPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

/// Serialized form: numerator, denominator and truncated expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesRecord {
    pub num: Vec<i128>,
    pub den: Vec<i128>,
    pub expansion: Vec<i128>,
}

impl HilbertSeries {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<HilbertSeries> {
        if den.coeff(0).is_zero() {
            return Err(Error::VanishingDenominator);
        }
        Ok(HilbertSeries { num, den })
    }

    pub fn polynomial(num: IntPoly) -> HilbertSeries {
        HilbertSeries { num, den: IntPoly::one() }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    fn expand_q(&self, cap: usize) -> Vec<BigRational> {
        let d0 = BigRational::from_integer(self.den.coeff(0));
        let mut out: Vec<BigRational> = Vec::with_capacity(cap + 1);
        for k in 0..=cap {
            let mut acc = BigRational::from_integer(self.num.coeff(k));
            for j in 1..=k.min(self.den.0.len().saturating_sub(1)) {
                acc -= BigRational::from_integer(self.den.coeff(j)) * &out[k - j];
            }
            out.push(acc / &d0);
        }
        out
    }

    /// Coefficients of `t^0 .. t^cap` of the power-series expansion.
    pub fn expand(&self, cap: usize) -> Result<Vec<BigInt>> {
        self.expand_q(cap)
            .into_iter()
            .enumerate()
            .map(|(k, c)| if c.is_integer() { Ok(c.to_integer()) } else { Err(Error::NonIntegral(k)) })
            .collect()
    }

    pub fn expand_i64(&self, cap: usize) -> Result<Vec<i64>> {
        self.expand(cap)?
            .into_iter()
            .map(|c| c.to_i64().ok_or_else(|| Error::CapExceeded("series coefficient exceeds i64".into())))
            .collect()
    }

    /// Cancels the common factor of numerator and denominator and scales to
    /// integers with no common content and `den(0) > 0`.
    fn normalized(num: IntPoly, den: IntPoly) -> HilbertSeries {
        if num.is_zero() {
            return HilbertSeries { num, den: IntPoly::one() };
        }
        let (nq, dq) = (num.to_q(), den.to_q());
        let g = nq.gcd(&dq);
        let (nq, dq) = (nq.div_rem(&g).0, dq.div_rem(&g).0);
        let l = nq.0.iter().chain(dq.0.iter()).fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let to_int = |p: &QPoly| -> Vec<BigInt> { p.0.iter().map(|c| c.numer() * (&l / c.denom())).collect() };
        let (n, d) = (to_int(&nq), to_int(&dq));
        let mut c = n.iter().chain(d.iter()).fold(BigInt::zero(), |g, x| g.gcd(x));
        if d[0].is_negative() {
            c = -c;
        }
        HilbertSeries {
            num: IntPoly::new(n.into_iter().map(|x| x / &c).collect()),
            den: IntPoly::new(d.into_iter().map(|x| x / &c).collect()),
        }
    }

    pub fn record(&self, cap: usize) -> Result<SeriesRecord> {
        let conv = |v: &[BigInt]| -> Result<Vec<i128>> {
            v.iter().map(|c| c.to_i128().ok_or_else(|| Error::CapExceeded("coefficient exceeds i128".into()))).collect()
        };
        Ok(SeriesRecord { num: conv(&self.num.0)?, den: conv(&self.den.0)?, expansion: conv(&self.expand(cap)?)? })
    }
}

pub fn series_arith(a: &HilbertSeries, b: &HilbertSeries, op: SeriesOp) -> HilbertSeries {
    let (num, den) = match op {
        SeriesOp::Add => (a.num.mul(&b.den).add(&b.num.mul(&a.den)), a.den.mul(&b.den)),
        SeriesOp::Sub => (a.num.mul(&b.den).sub(&b.num.mul(&a.den)), a.den.mul(&b.den)),
        SeriesOp::Mul => (a.num.mul(&b.num), a.den.mul(&b.den)),
    };
    HilbertSeries::normalized(num, den)
}

/// Whether the expansions of `a` and `b` agree through degree `cap`.
pub fn eq_prefix(a: &HilbertSeries, b: &HilbertSeries, cap: usize) -> bool {
    a.expand_q(cap) == b.expand_q(cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn t_minus_td_over(d: usize) -> HilbertSeries {
        let num = IntPoly::monomial(1, 1).sub(&IntPoly::monomial(d, 1));
        HilbertSeries::new(num, IntPoly::one_minus_t_pow(1)).unwrap()
    }

    #[test]
    fn expand_examples() {
        let h = HilbertSeries::new(IntPoly::one(), IntPoly::one_minus_t_pow(2)).unwrap();
        assert_eq!(h.expand(4).unwrap(), ints(&[1, 2, 3, 4, 5]));

        let sq = series_arith(&t_minus_td_over(2), &t_minus_td_over(2), SeriesOp::Mul);
        assert_eq!(sq.expand(6).unwrap(), ints(&[0, 0, 1, 0, 0, 0, 0]));

        let num = IntPoly::from_i64(&[0, 0, 3, -4, 1]);
        let h3 = HilbertSeries::new(num.clone(), IntPoly::one_minus_t_pow(3)).unwrap();
        // Independent route: Cauchy product with 1/(1-t)^3 = sum C(k+2, 2) t^k.
        let oracle: Vec<BigInt> = (0..=8)
            .map(|k| (0..=k).map(|j| num.coeff(j) * BigInt::from((k - j + 2) * (k - j + 1) / 2)).sum())
            .collect();
        assert_eq!(h3.expand(8).unwrap(), oracle);
        assert_eq!(&h3.expand(5).unwrap(), &ints(&[0, 0, 3, 5, 7, 9]));
    }

    #[test]
    fn expand_errors() {
        assert_eq!(HilbertSeries::new(IntPoly::one(), IntPoly::from_i64(&[0, 1])), Err(Error::VanishingDenominator));
        let h = HilbertSeries::new(IntPoly::one(), IntPoly::from_i64(&[2, -1])).unwrap();
        assert_eq!(h.expand(3), Err(Error::NonIntegral(0)));
    }

    #[test]
    fn arith_examples() {
        let h = HilbertSeries::new(IntPoly::from_i64(&[0, 3, 1]), IntPoly::one_minus_t_pow(3)).unwrap();
        let z = series_arith(&h, &h, SeriesOp::Sub);
        assert!(z.num().is_zero());
        assert_eq!(z.expand(5).unwrap(), ints(&[0; 6]));

        let t_over = HilbertSeries::new(IntPoly::monomial(1, 1), IntPoly::one_minus_t_pow(1)).unwrap();
        let sq = series_arith(&t_over, &t_over, SeriesOp::Mul);
        assert_eq!(sq, HilbertSeries::new(IntPoly::monomial(2, 1), IntPoly::one_minus_t_pow(2)).unwrap());

        for d in 2..6 {
            let one_minus_td = IntPoly::one().sub(&IntPoly::monomial(d, 1));
            let omega1 = HilbertSeries::new(
                one_minus_td.mul(&IntPoly::monomial(1, 2).sub(&IntPoly::monomial(d, 1))),
                IntPoly::one_minus_t_pow(2),
            )
            .unwrap();
            let omega0 = HilbertSeries::new(one_minus_td, IntPoly::one_minus_t_pow(2)).unwrap();
            let d_omega0 = series_arith(&omega0, &HilbertSeries::polynomial(IntPoly::one()), SeriesOp::Sub);
            let quotient = series_arith(&omega1, &d_omega0, SeriesOp::Sub);
            let closed = series_arith(&t_minus_td_over(d), &t_minus_td_over(d), SeriesOp::Mul);
            assert_eq!(quotient, closed);
            assert!(eq_prefix(&quotient, &closed, 20));
        }
    }

    #[test]
    fn eq_prefix_examples() {
        let t2 = HilbertSeries::polynomial(IntPoly::monomial(2, 1));
        let t2_t99 = HilbertSeries::polynomial(IntPoly::monomial(2, 1).add(&IntPoly::monomial(99, 1)));
        assert!(eq_prefix(&t2, &t2, 3));
        assert!(eq_prefix(&t2, &t2_t99, 10));
        assert!(!eq_prefix(&t2, &t2_t99, 99));
    }

    #[test]
    fn gcd_of_polynomials() {
        let q = |v: &[i64]| QPoly::new(v.iter().map(|&x| BigRational::from_integer(x.into())).collect());
        // (t-1)(t-2) and (t-1)(t+3)
        let g = q(&[2, -3, 1]).gcd(&q(&[-3, 2, 1]));
        assert_eq!(g, q(&[-1, 1]));
        assert_eq!(q(&[1, 2, 1]).derivative(), q(&[2, 2]));
    }
}
