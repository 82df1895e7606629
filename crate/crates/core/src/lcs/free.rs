//! Lower central series of the free algebra, one multidegree block at a time.
//!
//! `L_i(A_n)` is homogeneous for word content, so each piece `L_i[m]` splits
//! into independent blocks indexed by exponent vectors. Every block keeps a
//! reduced echelon basis (for normal forms) and the sparse bracket rows that
//! were independent when inserted (to generate the next term of the series).

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::echelon::{make_primitive, normalize_row};
use crate::exactla::{Echelon, Int, IntRow, SparseVec, Subspace};
use crate::ncpoly::{check_word_cap, MAX_WORDS};

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Block {
    pub content: Vec<u32>,
    /// Word indices in increasing (deglex) order.
    pub words: Vec<u64>,
}

/// Partition of the degree-`m` words into content blocks.
#[derive(Debug)]
pub struct DegreeLayout {
    degree: usize,
    blocks: Vec<Block>,
    index: HashMap<Vec<u32>, u32>,
    block_of: Vec<u32>,
    local: Vec<u32>,
}

impl DegreeLayout {
    fn build(n: usize, m: usize, cap: u64) -> Result<DegreeLayout> {
        let count = check_word_cap(n, m, cap)?;
        let mut by_content: BTreeMap<Vec<u32>, Vec<u64>> = BTreeMap::new();
        let mut digits = vec![0u32; n];
        for idx in 0..count {
            digits.iter_mut().for_each(|d| *d = 0);
            let mut x = idx;
            for _ in 0..m {
                digits[(x % n as u64) as usize] += 1;
                x /= n as u64;
            }
            by_content.entry(digits.clone()).or_default().push(idx);
        }
        let mut block_of = vec![0u32; count as usize];
        let mut local = vec![0u32; count as usize];
        let mut blocks = Vec::with_capacity(by_content.len());
        let mut index = HashMap::new();
        for (b, (content, words)) in by_content.into_iter().enumerate() {
            for (c, &w) in words.iter().enumerate() {
                block_of[w as usize] = b as u32;
                local[w as usize] = c as u32;
            }
            index.insert(content.clone(), b as u32);
            blocks.push(Block { content, words });
        }
        Ok(DegreeLayout { degree: m, blocks, index, block_of, local })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn num_words(&self) -> usize {
        self.block_of.len()
    }

    pub fn find(&self, content: &[u32]) -> Option<usize> {
        self.index.get(content).map(|&b| b as usize)
    }

    /// `(block, local column)` of a word index.
    pub fn locate(&self, word: u64) -> (usize, u32) {
        (self.block_of[word as usize] as usize, self.local[word as usize])
    }
}

/// One graded piece `L_i(A_n)[m]`, or the zero subspace of degree `m`.
#[derive(Debug)]
pub struct LcsPiece {
    i: usize,
    degree: usize,
    blocks: Vec<Echelon>,
    gens: Vec<Vec<IntRow>>,
    residue_of: Vec<Vec<u32>>,
    residue_cols: Vec<Vec<u32>>,
}

impl LcsPiece {
    fn assemble(i: usize, degree: usize, blocks: Vec<Echelon>, gens: Vec<Vec<IntRow>>) -> LcsPiece {
        let mut residue_of = Vec::with_capacity(blocks.len());
        let mut residue_cols = Vec::with_capacity(blocks.len());
        for e in &blocks {
            let mut of = vec![NONE; e.ncols()];
            let mut cols = Vec::new();
            for c in 0..e.ncols() as u32 {
                if !e.is_pivot(c) {
                    of[c as usize] = cols.len() as u32;
                    cols.push(c);
                }
            }
            residue_of.push(of);
            residue_cols.push(cols);
        }
        LcsPiece { i, degree, blocks, gens, residue_of, residue_cols }
    }

    fn zero(layout: &DegreeLayout, i: usize) -> LcsPiece {
        let blocks = layout.blocks.iter().map(|b| Echelon::new(b.words.len())).collect();
        let gens = vec![Vec::new(); layout.blocks.len()];
        LcsPiece::assemble(i, layout.degree, blocks, gens)
    }

    fn full(layout: &DegreeLayout) -> LcsPiece {
        let blocks: Vec<Echelon> = layout.blocks.iter().map(|b| Echelon::full(b.words.len())).collect();
        let gens = blocks.iter().map(|e| e.rows().to_vec()).collect();
        LcsPiece::assemble(1, layout.degree, blocks, gens)
    }

    /// Index in the series; `usize::MAX` for the zero subspace.
    pub fn index(&self) -> usize {
        self.i
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Echelon::rank).sum()
    }

    pub fn block(&self, b: usize) -> &Echelon {
        &self.blocks[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Dimension of the complement of the block, i.e. its residue coordinates.
    pub fn codim(&self, b: usize) -> usize {
        self.residue_cols[b].len()
    }

    /// Sparse basis rows that generate the block, each a bracket image.
    pub fn generators(&self, b: usize) -> &[IntRow] {
        &self.gens[b]
    }

    /// Normal form of a single word modulo the block: returns `(r, s)` with
    /// `s * word ≡ r` and `r` in residue coordinates of block `b`.
    pub fn normal_form(&self, b: usize, col: u32) -> (IntRow, Int) {
        let e = &self.blocks[b];
        match e.pivot_row(col) {
            None => (vec![(self.residue_of[b][col as usize], Int::ONE)], Int::ONE),
            Some(row) => {
                let a = row[0].1.clone();
                let r = row[1..].iter().map(|(c, v)| (self.residue_of[b][*c as usize], v.neg())).collect();
                (r, a)
            }
        }
    }
}

/// Cache of free-algebra layouts and pieces for one generator count.
#[derive(Debug)]
pub struct FreeLcs {
    n: usize,
    max_words: u64,
    layouts: HashMap<usize, Arc<DegreeLayout>>,
    pieces: HashMap<(usize, usize), Arc<LcsPiece>>,
    zeros: HashMap<usize, Arc<LcsPiece>>,
}

impl FreeLcs {
    pub fn new(n: usize) -> Result<FreeLcs> {
        FreeLcs::with_cap(n, MAX_WORDS)
    }

    pub fn with_cap(n: usize, max_words: u64) -> Result<FreeLcs> {
        if n == 0 || n > 255 {
            return Err(Error::Invalid(format!("generator count {n} out of range")));
        }
        Ok(FreeLcs { n, max_words, layouts: HashMap::new(), pieces: HashMap::new(), zeros: HashMap::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn layout(&mut self, m: usize) -> Result<Arc<DegreeLayout>> {
        if let Some(l) = self.layouts.get(&m) {
            return Ok(l.clone());
        }
        let l = Arc::new(DegreeLayout::build(self.n, m, self.max_words)?);
        self.layouts.insert(m, l.clone());
        Ok(l)
    }

    /// The zero subspace of degree `m`, in the same block coordinates.
    pub fn zero_piece(&mut self, m: usize) -> Result<Arc<LcsPiece>> {
        if let Some(p) = self.zeros.get(&m) {
            return Ok(p.clone());
        }
        let layout = self.layout(m)?;
        let p = Arc::new(LcsPiece::zero(&layout, usize::MAX));
        self.zeros.insert(m, p.clone());
        Ok(p)
    }

    /// `L_i(A_n)[m]`, `i >= 1`.
    pub fn piece(&mut self, i: usize, m: usize) -> Result<Arc<LcsPiece>> {
        if i == 0 {
            return Err(Error::Invalid("the lower central series starts at i = 1".into()));
        }
        if let Some(p) = self.pieces.get(&(i, m)) {
            return Ok(p.clone());
        }
        let layout = self.layout(m)?;
        let piece = if i == 1 {
            LcsPiece::full(&layout)
        } else if m < i {
            LcsPiece::zero(&layout, i)
        } else {
            self.bracket_piece(i, m, &layout)?
        };
        let piece = Arc::new(piece);
        self.pieces.insert((i, m), piece.clone());
        Ok(piece)
    }

    pub fn rank(&mut self, i: usize, m: usize) -> Result<usize> {
        Ok(self.piece(i, m)?.rank())
    }

    /// `L_i(A_n)[m]` as a subspace of the degree-`m` words in deglex order.
    pub fn subspace(&mut self, i: usize, m: usize) -> Result<Subspace> {
        let layout = self.layout(m)?;
        let piece = self.piece(i, m)?;
        let dim = layout.num_words();
        let mut vecs = Vec::with_capacity(piece.rank());
        for (b, block) in layout.blocks.iter().enumerate() {
            for row in piece.blocks[b].rows() {
                let entries = row.iter().map(|(c, v)| (block.words[*c as usize] as usize, num_rational::BigRational::from_integer(v.to_big())));
                vecs.push(SparseVec::new(dim, entries)?);
            }
        }
        crate::exactla::span(dim, &vecs)
    }

    /// `L_i[m] = sum_k [A[k], L_{i-1}[m-k]]`, block by block.
    fn bracket_piece(&mut self, i: usize, m: usize, layout: &DegreeLayout) -> Result<LcsPiece> {
        let mut lower: Vec<Option<Arc<LcsPiece>>> = vec![None; m];
        let mut layouts: Vec<Arc<DegreeLayout>> = Vec::with_capacity(m);
        for (r, slot) in lower.iter_mut().enumerate() {
            layouts.push(self.layout(r)?);
            if r >= i - 1 && r >= 1 {
                *slot = Some(self.piece(i - 1, r)?);
            }
        }
        let upper = self.piece(i - 1, m)?;
        let n = self.n as u64;
        let built: Vec<(Echelon, Vec<IntRow>)> = (0..layout.blocks.len())
            .into_par_iter()
            .map(|alpha| {
                let bound = upper.blocks[alpha].rank();
                build_block(n, m, layout, alpha, &layouts, &lower, bound)
            })
            .collect();
        let (blocks, gens) = built.into_iter().unzip();
        Ok(LcsPiece::assemble(i, m, blocks, gens))
    }
}

fn build_block(
    n: u64,
    m: usize,
    target: &DegreeLayout,
    alpha: usize,
    layouts: &[Arc<DegreeLayout>],
    lower: &[Option<Arc<LcsPiece>>],
    bound: usize,
) -> (Echelon, Vec<IntRow>) {
    let content = &target.blocks[alpha].content;
    let ncols = target.blocks[alpha].words.len();
    let mut rows: Vec<IntRow> = Vec::new();
    for k in 1..m {
        let r = m - k;
        let Some(low) = &lower[r] else { continue };
        let (lk, lr) = (&layouts[k], &layouts[r]);
        let (shift_r, shift_k) = (n.pow(r as u32), n.pow(k as u32));
        for beta in &lk.blocks {
            if beta.content.iter().zip(content).any(|(b, a)| b > a) {
                continue;
            }
            let gamma: Vec<u32> = content.iter().zip(&beta.content).map(|(a, b)| a - b).collect();
            let Some(g) = lr.find(&gamma) else { continue };
            let gens = &low.gens[g];
            let gwords = &lr.blocks[g].words;
            for &w in &beta.words {
                for gen in gens {
                    let mut row = Vec::with_capacity(2 * gen.len());
                    for (c, v) in gen {
                        let u = gwords[*c as usize];
                        row.push((target.local[(w * shift_r + u) as usize], v.clone()));
                        row.push((target.local[(u * shift_k + w) as usize], v.neg()));
                    }
                    let mut row = normalize_row(row);
                    if !row.is_empty() {
                        make_primitive(&mut row);
                        rows.push(row);
                    }
                }
            }
        }
    }
    rows.sort_unstable_by(|a, b| (a[0].0, a.len()).cmp(&(b[0].0, b.len())).then_with(|| a.cmp(b)));
    rows.dedup();
    let mut e = Echelon::new(ncols);
    let mut gens = Vec::new();
    for row in rows {
        if e.rank() >= bound {
            break;
        }
        if e.insert(row.clone()) {
            gens.push(row);
        }
    }
    e.make_reduced();
    (e, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{quotient_dim, subspace_sum};
    use crate::ncpoly::{enumerate_words, NCPoly};

    fn brute_lcs(n: usize, i: usize, m: usize) -> Subspace {
        let dim = n.pow(m as u32);
        if i == 1 {
            return Subspace::full(dim);
        }
        let mut acc = Subspace::zero(dim);
        for k in 1..m {
            let lower = brute_lcs(n, i - 1, m - k);
            for w in enumerate_words(n, k).unwrap() {
                let wp = NCPoly::monomial(n, w, num_traits::One::one());
                for b in lower.basis() {
                    let p = NCPoly::from_terms(
                        n,
                        b.entries().iter().map(|(c, v)| (crate::ncpoly::Word::from_index(*c as u64, m - k, n), v.clone())),
                    )
                    .unwrap();
                    let br = wp.bracket(&p).unwrap();
                    let v = SparseVec::new(dim, br.terms().map(|(w, c)| (w.index(n) as usize, c.clone()))).unwrap();
                    acc = subspace_sum(&acc, &crate::exactla::span(dim, &[v]).unwrap()).unwrap();
                }
            }
        }
        acc
    }

    #[test]
    fn matches_brute_force() {
        let mut f = FreeLcs::new(2).unwrap();
        for i in 1..=4 {
            for m in 0..=5 {
                assert_eq!(f.subspace(i, m).unwrap(), brute_lcs(2, i, m), "L_{i}[{m}]");
            }
        }
        let mut f3 = FreeLcs::new(3).unwrap();
        for m in 0..=4 {
            assert_eq!(f3.subspace(3, m).unwrap(), brute_lcs(3, 3, m));
        }
    }

    #[test]
    fn small_free_dimensions() {
        let mut f = FreeLcs::new(2).unwrap();
        assert_eq!(f.rank(2, 2).unwrap(), 1);
        assert_eq!(f.rank(3, 3).unwrap(), 2);
        assert_eq!(f.rank(2, 1).unwrap(), 0);
        assert_eq!(f.rank(1, 0).unwrap(), 1);
        let l2 = f.subspace(2, 3).unwrap();
        let l3 = f.subspace(3, 3).unwrap();
        assert_eq!(quotient_dim(&l2, &l3).unwrap(), 2);
    }

    #[test]
    fn necklace_codimension() {
        let mut f = FreeLcs::new(2).unwrap();
        let necklaces = [1, 2, 3, 4, 6, 8, 14, 20, 36];
        for (m, &k) in necklaces.iter().enumerate() {
            assert_eq!(2usize.pow(m as u32) - f.rank(2, m).unwrap(), k, "degree {m}");
        }
    }

    #[test]
    fn normal_form_is_congruent() {
        let mut f = FreeLcs::new(2).unwrap();
        let p = f.piece(3, 4).unwrap();
        let layout = f.layout(4).unwrap();
        for (b, block) in layout.blocks().iter().enumerate() {
            for c in 0..block.words.len() as u32 {
                let (r, s) = p.normal_form(b, c);
                let mut diff: IntRow = r.iter().map(|(k, v)| (p.residue_cols[b][*k as usize], v.clone())).collect();
                diff.push((c, s.neg()));
                assert!(p.block(b).contains(normalize_row(diff)));
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        let mut f = FreeLcs::with_cap(2, 100).unwrap();
        assert!(matches!(f.piece(2, 7), Err(Error::CapExceeded(_))));
        assert!(FreeLcs::new(0).is_err());
        assert!(FreeLcs::new(2).unwrap().piece(0, 2).is_err());
    }
}
