use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::generator_name;
use crate::error::{Error, Result};

/// Element of the polynomial ring `Q[x_1..x_n]`, keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl CommPoly {
    pub fn zero(n: usize) -> CommPoly {
        CommPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: BigRational) -> CommPoly {
        let mut f = CommPoly::zero(n);
        f.add_term(vec![0; n], c);
        f
    }

    pub fn var(n: usize, i: usize) -> CommPoly {
        let mut e = vec![0; n];
        e[i] = 1;
        let mut f = CommPoly::zero(n);
        f.add_term(e, BigRational::one());
        f
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Result<CommPoly> {
        let mut f = CommPoly::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::DimensionMismatch(e.len(), n));
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>() as usize);
        let Some(d) = it.next() else { return Some(0) };
        it.all(|x| x == d).then_some(d)
    }

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        let mut f = self.clone();
        for (e, c) in &other.terms {
            f.add_term(e.clone(), c.clone());
        }
        f
    }

    pub fn sub(&self, other: &CommPoly) -> CommPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> CommPoly {
        let mut f = CommPoly::zero(self.n);
        for (e, x) in &self.terms {
            f.add_term(e.clone(), x * c);
        }
        f
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut f = CommPoly::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(p, q)| p + q).collect();
                f.add_term(e, x * y);
            }
        }
        f
    }

    /// Formal derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Result<CommPoly> {
        if i >= self.n {
            return Err(Error::Invalid(format!("generator index {i} out of range for {} generators", self.n)));
        }
        let mut f = CommPoly::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            f.add_term(e2, c * BigRational::from_integer(e[i].into()));
        }
        Ok(f)
    }

    /// Substitutes `x_i -> images[i]` (all polynomials in a common ring).
    pub fn substitute(&self, images: &[CommPoly]) -> CommPoly {
        let m = images[0].n;
        let mut out = CommPoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = CommPoly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&images[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { generator_name(i, self.n) } else { format!("{}^{k}", generator_name(i, self.n)) })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::parse;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn partial_examples() {
        let f = parse("x^2+y^2", 2).unwrap().abelianize();
        assert_eq!(f.partial(0).unwrap(), CommPoly::var(2, 0).scale(&q(2)));
        let g = parse("x^2+y^2", 3).unwrap().abelianize();
        assert!(g.partial(2).unwrap().is_zero());
        assert!(g.partial(3).is_err());
    }

    #[test]
    fn euler_identity_small() {
        let f = parse("x^3 + 2 x y z - 5 z^2 y", 3).unwrap().abelianize();
        let mut acc = CommPoly::zero(3);
        for i in 0..3 {
            acc = acc.add(&CommPoly::var(3, i).mul(&f.partial(i).unwrap()));
        }
        assert_eq!(acc, f.scale(&q(3)));
    }
}
