//! Words and polynomials in noncommuting generators over the rationals.
//!
//! Words are ordered degree-lexicographically with `x_0 < x_1 < ...`; that
//! order fixes every coordinate system built on top of them.

mod comm;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use comm::CommPoly;
pub use parse::parse;

/// Default bound on the number of words a single degree may enumerate.
pub const MAX_WORDS: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Position among the `n^m` words of the same degree (base-`n` digits).
    pub fn index(&self, n: usize) -> u64 {
        self.0.iter().fold(0u64, |acc, &l| acc * n as u64 + l as u64)
    }

    pub fn from_index(mut idx: u64, degree: usize, n: usize) -> Word {
        let mut v = vec![0u8; degree];
        for slot in v.iter_mut().rev() {
            *slot = (idx % n as u64) as u8;
            idx /= n as u64;
        }
        Word(v)
    }

    /// Exponent vector of the abelianized word.
    pub fn content(&self, n: usize) -> Vec<u32> {
        let mut e = vec![0u32; n];
        for &l in &self.0 {
            e[l as usize] += 1;
        }
        e
    }

    pub fn fmt_with(&self, n: usize) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let name = generator_name(l as usize, n);
            if j - i == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn generator_name(i: usize, n: usize) -> String {
    if n <= 4 {
        ["x", "y", "z", "w"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

pub fn word_count(n: usize, m: usize) -> Option<u64> {
    (n as u64).checked_pow(m as u32)
}

pub(crate) fn check_word_cap(n: usize, m: usize, cap: u64) -> Result<u64> {
    match word_count(n, m) {
        Some(c) if c <= cap => Ok(c),
        _ => Err(Error::CapExceeded(format!("{n}^{m} words exceeds the cap of {cap}"))),
    }
}

/// All words of degree `m` in `n` generators, in deglex order.
pub fn enumerate_words(n: usize, m: usize) -> Result<Vec<Word>> {
    enumerate_words_capped(n, m, MAX_WORDS)
}

pub fn enumerate_words_capped(n: usize, m: usize, cap: u64) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(Error::Invalid("at least one generator is required".into()));
    }
    let count = check_word_cap(n, m, cap)?;
    Ok((0..count).map(|i| Word::from_index(i, m, n)).collect())
}

/// Element of the free algebra on `n` generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPoly {
    n: usize,
    terms: BTreeMap<Word, BigRational>,
}

impl NCPoly {
    pub fn zero(n: usize) -> NCPoly {
        NCPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> NCPoly {
        NCPoly::monomial(n, Word::empty(), BigRational::one())
    }

    pub fn generator(n: usize, i: usize) -> NCPoly {
        assert!(i < n, "generator index out of range");
        NCPoly::monomial(n, Word(vec![i as u8]), BigRational::one())
    }

    pub fn monomial(n: usize, w: Word, c: BigRational) -> NCPoly {
        let mut p = NCPoly::zero(n);
        p.add_term(w, c);
        p
    }

    pub fn word(n: usize, letters: &[u8]) -> NCPoly {
        NCPoly::monomial(n, Word(letters.to_vec()), BigRational::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Word, BigRational)>) -> Result<NCPoly> {
        let mut p = NCPoly::zero(n);
        for (w, c) in terms {
            if let Some(&l) = w.0.iter().find(|&&l| l as usize >= n) {
                return Err(Error::Invalid(format!("letter {l} out of range for {n} generators")));
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
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

    fn check_n(&self, other: &NCPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GeneratorMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_n(other)?;
        let mut p = self.clone();
        for (w, c) in &other.terms {
            p.add_term(w.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn sub(&self, other: &NCPoly) -> Result<NCPoly> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> NCPoly {
        let mut p = NCPoly::zero(self.n);
        for (w, x) in &self.terms {
            p.add_term(w.clone(), x * c);
        }
        p
    }

    pub fn nc_mul(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_n(other)?;
        let mut p = NCPoly::zero(self.n);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                p.add_term(u.concat(v), a * b);
            }
        }
        Ok(p)
    }

    /// `k`-fold product, `k >= 1`.
    pub fn pow(&self, k: usize) -> Result<NCPoly> {
        if k == 0 {
            return Ok(NCPoly::one(self.n));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.nc_mul(self)?;
        }
        Ok(acc)
    }

    /// Commutator `pq - qp`.
    pub fn bracket(&self, other: &NCPoly) -> Result<NCPoly> {
        self.nc_mul(other)?.sub(&other.nc_mul(self)?)
    }

    /// Common degree of all terms, or `None` if the terms have mixed degrees.
    /// The zero polynomial reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::degree);
        let Some(d) = it.next() else { return Some(0) };
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).max()
    }

    pub fn abelianize(&self) -> CommPoly {
        let mut f = CommPoly::zero(self.n);
        for (w, c) in &self.terms {
            f.add_term(w.content(self.n), c.clone());
        }
        f
    }

    /// Relabels generators: letter `l` becomes `perm[l]`.
    pub fn permute_generators(&self, perm: &[u8]) -> NCPoly {
        let mut p = NCPoly::zero(self.n);
        for (w, c) in &self.terms {
            p.add_term(Word(w.0.iter().map(|&l| perm[l as usize]).collect()), c.clone());
        }
        p
    }

    /// Integer coefficients with content 1 and positive leading (deglex-last)
    /// coefficient; spans the same line as `self`.
    pub fn primitive_integer_terms(&self) -> Vec<(Word, BigInt)> {
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        let mut ints: Vec<(Word, BigInt)> =
            self.terms.iter().map(|(w, c)| (w.clone(), c.numer() * (&l / c.denom()))).collect();
        let mut g = BigInt::zero();
        for (_, x) in &ints {
            g = num_integer::Integer::gcd(&g, x);
        }
        if let Some((_, last)) = ints.last() {
            if last.is_negative() {
                g = -g;
            }
        }
        if !g.is_zero() {
            for (_, x) in ints.iter_mut() {
                *x = &*x / &g;
            }
        }
        ints
    }
}

impl fmt::Display for NCPoly {
    /// Canonical form: deglex-sorted `coeff*word` terms joined by `+`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| if w.degree() == 0 { c.to_string() } else { format!("{c}*{}", w.fmt_with(self.n)) })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `A_n / <P>`, graded by word length.
    Graded,
    /// `A_n / <P - 1>`, filtered by word length.
    Filtered,
}

/// `A_n / <P>` or `A_n / <P - 1>` for one homogeneous relation `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    n: usize,
    relation: NCPoly,
    degree: usize,
    mode: Mode,
}

impl AlgebraPresentation {
    pub fn new(relation: NCPoly, mode: Mode) -> Result<AlgebraPresentation> {
        if relation.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = relation.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if d < 2 {
            return Err(Error::RelationDegree(d));
        }
        Ok(AlgebraPresentation { n: relation.n(), relation, degree: d, mode })
    }

    pub fn parse(text: &str, n: usize, mode: Mode) -> Result<AlgebraPresentation> {
        AlgebraPresentation::new(parse(text, n)?, mode)
    }

    /// Homogeneous degree-`d` relation with independent integer coefficients
    /// uniform in `[-9, 9]`, resampled while zero.
    pub fn random_generic<R: Rng>(n: usize, d: usize, mode: Mode, rng: &mut R) -> Result<AlgebraPresentation> {
        let words = enumerate_words(n, d)?;
        loop {
            let terms = words.iter().map(|w| (w.clone(), BigRational::from_integer(rng.gen_range(-9i64..=9).into())));
            let p = NCPoly::from_terms(n, terms)?;
            if !p.is_zero() {
                return AlgebraPresentation::new(p, mode);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relation(&self) -> &NCPoly {
        &self.relation
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> AlgebraPresentation {
        AlgebraPresentation { mode, ..self.clone() }
    }

    /// The working relation: `P` when graded, `P - 1` when filtered.
    pub fn working_relation(&self) -> NCPoly {
        match self.mode {
            Mode::Graded => self.relation.clone(),
            Mode::Filtered => self.relation.sub(&NCPoly::one(self.n)).expect("same n"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn enumerate_examples() {
        let w = enumerate_words(2, 2).unwrap();
        let got: Vec<Vec<u8>> = w.iter().map(|w| w.letters().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(enumerate_words(2, 0).unwrap(), vec![Word::empty()]);
        assert_eq!(enumerate_words(3, 2).unwrap().len(), 9);
        assert!(matches!(enumerate_words_capped(4, 10, 1000), Err(Error::CapExceeded(_))));
        let w3 = enumerate_words(3, 3).unwrap();
        assert!(w3.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn index_round_trip() {
        for (i, w) in enumerate_words(3, 4).unwrap().iter().enumerate() {
            assert_eq!(w.index(3), i as u64);
            assert_eq!(&Word::from_index(i as u64, 4, 3), w);
        }
    }

    #[test]
    fn product_examples() {
        let x = NCPoly::generator(2, 0);
        let y = NCPoly::generator(2, 1);
        assert_eq!(x.nc_mul(&y).unwrap(), NCPoly::word(2, &[0, 1]));
        let lhs = x.add(&y).unwrap().nc_mul(&x.sub(&y).unwrap()).unwrap();
        let expect = NCPoly::from_terms(
            2,
            [(Word::new(vec![0, 0]), q(1)), (Word::new(vec![0, 1]), q(-1)), (Word::new(vec![1, 0]), q(1)), (Word::new(vec![1, 1]), q(-1))],
        )
        .unwrap();
        assert_eq!(lhs, expect);
        assert_eq!(lhs.nc_mul(&NCPoly::one(2)).unwrap(), lhs);
        assert!(x.nc_mul(&NCPoly::generator(3, 0)).is_err());
    }

    #[test]
    fn bracket_examples() {
        let x = NCPoly::generator(3, 0);
        let y = NCPoly::generator(3, 1);
        let z = NCPoly::generator(3, 2);
        assert!(x.bracket(&x).unwrap().is_zero());
        assert_eq!(x.bracket(&y).unwrap(), NCPoly::word(3, &[0, 1]).sub(&NCPoly::word(3, &[1, 0])).unwrap());
        let xy = x.nc_mul(&y).unwrap();
        assert_eq!(xy.bracket(&z).unwrap(), NCPoly::word(3, &[0, 1, 2]).sub(&NCPoly::word(3, &[2, 0, 1])).unwrap());
    }

    #[test]
    fn abelianize_examples() {
        let p = parse("x*y - y*x", 2).unwrap();
        assert!(p.abelianize().is_zero());
        let xyx = parse("xyx", 2).unwrap().abelianize();
        assert_eq!(xyx, CommPoly::from_terms(2, [(vec![2, 1], q(1))]).unwrap());
        let s = parse("x^2+y^2", 2).unwrap().abelianize();
        assert_eq!(s, CommPoly::from_terms(2, [(vec![2, 0], q(1)), (vec![0, 2], q(1))]).unwrap());
    }

    #[test]
    fn presentation_validation() {
        assert_eq!(AlgebraPresentation::parse("x^2+y", 2, Mode::Graded), Err(Error::NotHomogeneous));
        assert_eq!(AlgebraPresentation::parse("x+y", 2, Mode::Graded), Err(Error::RelationDegree(1)));
        assert_eq!(AlgebraPresentation::parse("x*y-x*y", 2, Mode::Graded), Err(Error::ZeroPolynomial));
        let p = AlgebraPresentation::parse("x^2+y^2", 2, Mode::Filtered).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.working_relation().to_string(), "-1+1*x^2+1*y^2");
    }

    #[test]
    fn random_generic_is_reproducible() {
        let mut r1 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut r2 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let a = AlgebraPresentation::random_generic(3, 3, Mode::Graded, &mut r1).unwrap();
        let b = AlgebraPresentation::random_generic(3, 3, Mode::Graded, &mut r2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), 3);
        assert!(a.relation().terms().all(|(_, c)| c.abs() <= q(9)));
    }

    #[test]
    fn primitive_integer_terms_normalize() {
        let p = parse("1/2 x^2 - 3/4 y^2", 2).unwrap();
        let t = p.primitive_integer_terms();
        assert_eq!(t[0].1, BigInt::from(-2));
        assert_eq!(t[1].1, BigInt::from(3));
    }
}
