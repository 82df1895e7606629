//! `L_j + I` for a one-relator ideal `I`, through normal forms modulo `L_j`.
//!
//! Every word has a normal form modulo the free piece `L_j[k]` supported on
//! the non-pivot columns of its block. Reducing the ideal generators to those
//! residue coordinates and eliminating there gives `dim (L_j + I)` without
//! ever forming the sum, and `dim B_i(A/I) = dim(L_i + I) - dim(L_{i+1} + I)`.
//!
//! Residue columns are grouped by coset of the relation lattice (each group
//! is eliminated separately) and ordered by descending word length, so the
//! pivots of degree at most `m` count the part of a filtered space that lies
//! in degrees `<= m`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use super::free::{DegreeLayout, FreeLcs, LcsPiece};
use super::grading::{ClassIds, ClassLattice};
use super::Limits;
use crate::error::{Error, Result};
use crate::exactla::echelon::make_primitive;
use crate::exactla::{Echelon, Int, IntRow, SparseVec, Subspace};
use crate::ncpoly::{AlgebraPresentation, Mode, NCPoly, Word};

/// `Some(j)` is `L_j(A_n)`; `None` is the zero subspace.
pub(crate) type Level = Option<usize>;

/// `(degree, word index, coefficient)`.
type Term = (usize, u64, Int);

#[derive(Clone, Debug)]
struct RelTerm {
    degree: usize,
    index: u64,
    coeff: Int,
    content: Vec<u32>,
}

fn rel_terms(p: &NCPoly) -> Vec<RelTerm> {
    let n = p.n();
    p.primitive_integer_terms()
        .into_iter()
        .map(|(w, c)| RelTerm { degree: w.degree(), index: w.index(n), coeff: Int::from_big(c), content: w.content(n) })
        .collect()
}

#[derive(Debug)]
struct ClassSpace {
    echelon: Echelon,
    col_degree: Vec<u32>,
}

/// Residue coordinates of every degree in `degrees` modulo one level, and the
/// echelon of the ideal rows reduced into them.
#[derive(Debug)]
struct ResidueSystem {
    layouts: HashMap<usize, Arc<DegreeLayout>>,
    pieces: HashMap<usize, Arc<LcsPiece>>,
    slots: HashMap<usize, Vec<(u32, u32)>>,
    classes: Vec<ClassSpace>,
    class_offsets: Vec<usize>,
}

impl ResidueSystem {
    fn total_dim(&self) -> usize {
        self.classes.iter().map(|c| c.col_degree.len()).sum()
    }

    fn rank(&self) -> usize {
        self.classes.iter().map(|c| c.echelon.rank()).sum()
    }

    /// Number of ideal residue pivots in each degree.
    fn pivots_by_degree(&self, max: usize) -> Vec<usize> {
        let mut out = vec![0; max + 1];
        for c in &self.classes {
            for row in c.echelon.rows() {
                out[c.col_degree[row[0].0 as usize] as usize] += 1;
            }
        }
        out
    }

    /// Residue of `sum coeff * word`, with one common positive scale, as
    /// `(class, column, value)` triples sorted by class and column.
    fn residue(&self, terms: &[(usize, u64, Int)]) -> Vec<(u32, u32, Int)> {
        let mut parts = Vec::with_capacity(terms.len());
        let mut lcm = Int::ONE;
        for (k, idx, c) in terms {
            let (b, col) = self.layouts[k].locate(*idx);
            let (r, s) = self.pieces[k].normal_form(b, col);
            if r.is_empty() {
                continue;
            }
            let (class, off) = self.slots[k][b];
            lcm = lcm.lcm(&s);
            parts.push((class, off, r, c.clone(), s));
        }
        let mut out: Vec<(u32, u32, Int)> = Vec::new();
        for (class, off, r, c, s) in parts {
            let f = c.mul(&lcm.div_exact(&s));
            out.extend(r.into_iter().map(|(col, v)| (class, off + col, v.mul(&f))));
        }
        out.sort_by_key(|e| (e.0, e.1));
        let mut merged: Vec<(u32, u32, Int)> = Vec::with_capacity(out.len());
        for (class, col, v) in out {
            match merged.last_mut() {
                Some(last) if last.0 == class && last.1 == col => last.2 = last.2.add(&v),
                _ => merged.push((class, col, v)),
            }
            if merged.last().is_some_and(|e| e.2.is_zero()) {
                merged.pop();
            }
        }
        merged
    }

    fn global_row(&self, res: &[(u32, u32, Int)]) -> IntRow {
        res.iter().map(|(class, col, v)| ((self.class_offsets[*class as usize] + *col as usize) as u32, v.clone())).collect()
    }

    /// All class echelons side by side in one coordinate space.
    fn combined(&self) -> Echelon {
        let mut e = Echelon::new(self.total_dim());
        for (k, c) in self.classes.iter().enumerate() {
            let off = self.class_offsets[k] as u32;
            for row in c.echelon.rows() {
                e.insert(row.iter().map(|(col, v)| (col + off, v.clone())).collect());
            }
        }
        e
    }
}

/// One ideal generator `u * R * v`, addressed by its outer words.
#[derive(Clone, Copy)]
struct Pair {
    a: usize,
    u: u64,
    b: usize,
    v: u64,
}

/// Cache of free pieces and ideal residue systems for one presentation.
#[derive(Debug)]
pub struct LcsCache {
    pres: AlgebraPresentation,
    limits: Limits,
    free: FreeLcs,
    graded_rel: Vec<RelTerm>,
    filtered_rel: Vec<RelTerm>,
    graded_lattice: ClassLattice,
    filtered_lattice: ClassLattice,
    graded: HashMap<(Level, usize), Arc<ResidueSystem>>,
    filtered: HashMap<(Level, usize), Arc<Vec<usize>>>,
}

impl LcsCache {
    pub fn new(pres: &AlgebraPresentation) -> Result<LcsCache> {
        LcsCache::with_limits(pres, Limits::for_generators(pres.n()))
    }

    pub fn with_limits(pres: &AlgebraPresentation, limits: Limits) -> Result<LcsCache> {
        let graded_rel = rel_terms(pres.relation());
        let filtered_rel = rel_terms(&pres.with_mode(Mode::Filtered).working_relation());
        let contents: Vec<Vec<u32>> = graded_rel.iter().map(|t| t.content.clone()).collect();
        Ok(LcsCache {
            pres: pres.clone(),
            free: FreeLcs::with_cap(pres.n(), limits.max_words)?,
            limits,
            graded_rel,
            filtered_rel,
            graded_lattice: ClassLattice::for_relation(&contents, false),
            filtered_lattice: ClassLattice::for_relation(&contents, true),
            graded: HashMap::new(),
            filtered: HashMap::new(),
        })
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.pres
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn free(&mut self) -> &mut FreeLcs {
        &mut self.free
    }

    fn n(&self) -> usize {
        self.pres.n()
    }

    fn check_degree(&self, m: usize) -> Result<()> {
        if m > self.limits.max_degree {
            return Err(Error::CapExceeded(format!("degree {m} exceeds the cap of {} for n = {}", self.limits.max_degree, self.n())));
        }
        Ok(())
    }

    fn level_piece(&mut self, level: Level, k: usize) -> Result<Arc<LcsPiece>> {
        match level {
            Some(j) => self.free.piece(j, k),
            None => self.free.zero_piece(k),
        }
    }

    /// Residue coordinates for `degrees` (descending), grouped by class.
    fn residue_frame(&mut self, level: Level, degrees: &[usize], filtered: bool) -> Result<ResidueSystem> {
        let mut layouts = HashMap::new();
        let mut pieces = HashMap::new();
        let mut slots = HashMap::new();
        let mut ids = ClassIds::default();
        let mut col_degree: Vec<Vec<u32>> = Vec::new();
        for &k in degrees {
            let layout = self.free.layout(k)?;
            let piece = self.level_piece(level, k)?;
            let lattice = if filtered { &self.filtered_lattice } else { &self.graded_lattice };
            let mut s = Vec::with_capacity(layout.blocks().len());
            for (b, block) in layout.blocks().iter().enumerate() {
                let class = ids.id(lattice.key(&block.content)) as usize;
                if class == col_degree.len() {
                    col_degree.push(Vec::new());
                }
                s.push((class as u32, col_degree[class].len() as u32));
                col_degree[class].extend(std::iter::repeat_n(k as u32, piece.codim(b)));
            }
            layouts.insert(k, layout);
            pieces.insert(k, piece);
            slots.insert(k, s);
        }
        let mut class_offsets = Vec::with_capacity(col_degree.len());
        let mut acc = 0;
        for c in &col_degree {
            class_offsets.push(acc);
            acc += c.len();
        }
        let classes = col_degree.into_iter().map(|cd| ClassSpace { echelon: Echelon::new(cd.len()), col_degree: cd }).collect();
        Ok(ResidueSystem { layouts, pieces, slots, classes, class_offsets })
    }

    /// Eliminates `u * R * v` for all outer lengths `a + b` in `lengths`.
    fn eliminate(&self, sys: &mut ResidueSystem, rel: &[RelTerm], lengths: &[usize]) {
        let n = self.n();
        let base = &rel[0];
        let mut by_class: Vec<Vec<Pair>> = vec![Vec::new(); sys.classes.len()];
        let mut contents: HashMap<usize, Vec<Vec<u32>>> = HashMap::new();
        let max_len = lengths.iter().copied().max().unwrap_or(0);
        for len in 0..=max_len {
            let count = (n as u64).pow(len as u32);
            contents.insert(len, (0..count).map(|i| Word::from_index(i, len, n).content(n)).collect());
        }
        let degree_of_base = base.degree;
        for &total in lengths {
            for a in 0..=total {
                let b = total - a;
                let (ca, cb) = (&contents[&a], &contents[&b]);
                for (u, cu) in ca.iter().enumerate() {
                    for (v, cv) in cb.iter().enumerate() {
                        let c: Vec<u32> = (0..n).map(|i| cu[i] + base.content[i] + cv[i]).collect();
                        let k = a + degree_of_base + b;
                        let blk = sys.layouts[&k].find(&c).expect("content of a word of this length");
                        let class = sys.slots[&k][blk].0 as usize;
                        by_class[class].push(Pair { a, u: u as u64, b, v: v as u64 });
                    }
                }
            }
        }
        let frame: &ResidueSystem = sys;
        let echelons: Vec<Echelon> = by_class
            .par_iter()
            .enumerate()
            .map(|(class, pairs)| {
                let mut e = Echelon::new(frame.classes[class].col_degree.len());
                let full = e.ncols();
                for p in pairs {
                    if e.rank() == full {
                        break;
                    }
                    let terms: Vec<(usize, u64, Int)> = rel
                        .iter()
                        .map(|t| {
                            let k = p.a + t.degree + p.b;
                            let idx = (p.u * (n as u64).pow(t.degree as u32) + t.index) * (n as u64).pow(p.b as u32) + p.v;
                            (k, idx, t.coeff.clone())
                        })
                        .collect();
                    let res = frame.residue(&terms);
                    debug_assert!(res.iter().all(|r| r.0 as usize == class));
                    let mut row: IntRow = res.into_iter().map(|(_, c, v)| (c, v)).collect();
                    if row.is_empty() {
                        continue;
                    }
                    make_primitive(&mut row);
                    e.insert(row);
                }
                e
            })
            .collect();
        for (c, e) in sys.classes.iter_mut().zip(echelons) {
            c.echelon = e;
        }
    }

    fn graded_system(&mut self, level: Level, m: usize) -> Result<Arc<ResidueSystem>> {
        if let Some(s) = self.graded.get(&(level, m)) {
            return Ok(s.clone());
        }
        let d = self.pres.degree();
        let mut sys = self.residue_frame(level, &[m], false)?;
        if m >= d {
            let rel = self.graded_rel.clone();
            self.eliminate(&mut sys, &rel, &[m - d]);
        }
        let sys = Arc::new(sys);
        self.graded.insert((level, m), sys.clone());
        Ok(sys)
    }

    /// `dim (I[m] mod L_j[m])`.
    fn graded_residue_rank(&mut self, level: Level, m: usize) -> Result<usize> {
        if level == Some(1) {
            return Ok(0);
        }
        Ok(self.graded_system(level, m)?.rank())
    }

    /// `dim <P>[m]`.
    pub fn ideal_rank(&mut self, m: usize) -> Result<usize> {
        self.check_degree(m)?;
        self.graded_residue_rank(None, m)
    }

    /// `dim (L_j[m] + <P>[m])`.
    pub fn lcs_plus_ideal_rank(&mut self, j: usize, m: usize) -> Result<usize> {
        self.check_degree(m)?;
        Ok(self.free.rank(j, m)? + self.graded_residue_rank(Some(j), m)?)
    }

    /// `n^m - dim <P>[m]`.
    pub fn algebra_dim(&mut self, m: usize) -> Result<usize> {
        self.check_degree(m)?;
        Ok(self.free.layout(m)?.num_words() - self.ideal_rank(m)?)
    }

    pub fn b_dim_free(&mut self, i: usize, m: usize) -> Result<usize> {
        self.check_degree(m)?;
        Ok(self.free.rank(i, m)? - self.free.rank(i + 1, m)?)
    }

    /// `dim B_i(A_n/<P>)[m]`.
    pub fn b_dim(&mut self, i: usize, m: usize) -> Result<usize> {
        Ok(self.lcs_plus_ideal_rank(i, m)? - self.lcs_plus_ideal_rank(i + 1, m)?)
    }

    fn poly_terms(&self, p: &NCPoly) -> Result<(usize, Vec<Term>)> {
        if p.n() != self.n() {
            return Err(Error::GeneratorMismatch(p.n(), self.n()));
        }
        let m = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        let terms = p.primitive_integer_terms().into_iter().map(|(w, c)| (m, w.index(self.n()), Int::from_big(c))).collect();
        Ok((m, terms))
    }

    /// Whether a homogeneous `p` lies in `L_j + <P>`.
    pub fn in_lcs_plus_ideal(&mut self, j: usize, p: &NCPoly) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        let (m, terms) = self.poly_terms(p)?;
        self.check_degree(m)?;
        if j == 1 {
            return Ok(true);
        }
        let sys = self.graded_system(Some(j), m)?;
        let res = sys.residue(&terms);
        let mut by_class: BTreeMap<u32, IntRow> = BTreeMap::new();
        for (class, col, v) in res {
            by_class.entry(class).or_default().push((col, v));
        }
        Ok(by_class.into_iter().all(|(class, row)| sys.classes[class as usize].echelon.contains(row)))
    }

    /// Whether `cands` (homogeneous, all of degree `m`) stay independent
    /// modulo `L_j + <P>`.
    pub fn independent_mod_lcs_plus_ideal(&mut self, j: usize, cands: &[NCPoly]) -> Result<bool> {
        let Some(first) = cands.first() else { return Ok(true) };
        if j == 1 {
            return Ok(false);
        }
        let m = first.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        self.check_degree(m)?;
        let sys = self.graded_system(Some(j), m)?;
        let mut e = sys.combined();
        for c in cands {
            let (mc, terms) = if c.is_zero() { (m, Vec::new()) } else { self.poly_terms(c)? };
            if mc != m {
                return Err(Error::NotHomogeneous);
            }
            if !e.insert(sys.global_row(&sys.residue(&terms))) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `<P>[m]` as a subspace of the degree-`m` words.
    pub fn ideal_subspace(&mut self, m: usize) -> Result<Subspace> {
        self.check_degree(m)?;
        let n = self.n();
        let dim = self.free.layout(m)?.num_words();
        let d = self.pres.degree();
        let mut vecs = Vec::new();
        if m >= d {
            for a in 0..=m - d {
                for u in crate::ncpoly::enumerate_words(n, a)? {
                    for v in crate::ncpoly::enumerate_words(n, m - d - a)? {
                        let row = NCPoly::monomial(n, u.clone(), num_traits::One::one())
                            .nc_mul(self.pres.relation())?
                            .nc_mul(&NCPoly::monomial(n, v, num_traits::One::one()))?;
                        vecs.push(SparseVec::new(dim, row.terms().map(|(w, c)| (w.index(n) as usize, c.clone())))?);
                    }
                }
            }
        }
        crate::exactla::span(dim, &vecs)
    }

    /// `dim ((L_j + J_M) ∩ V_{<=m})` for every `m <= M`, where `J_M` is spanned
    /// by `u (P - 1) v` of length at most `M` and `L_j` is taken up to length `M`.
    pub(crate) fn filtered_ranks(&mut self, level: Level, big_m: usize) -> Result<Arc<Vec<usize>>> {
        if let Some(r) = self.filtered.get(&(level, big_m)) {
            return Ok(r.clone());
        }
        let d = self.pres.degree();
        let degrees: Vec<usize> = (0..=big_m).rev().collect();
        let mut sys = self.residue_frame(level, &degrees, true)?;
        if big_m >= d {
            let rel = self.filtered_rel.clone();
            let lengths: Vec<usize> = (0..=big_m - d).collect();
            self.eliminate(&mut sys, &rel, &lengths);
        }
        let pivots = sys.pivots_by_degree(big_m);
        let mut out = Vec::with_capacity(big_m + 1);
        let mut acc = 0;
        for (k, &p) in pivots.iter().enumerate().take(big_m + 1) {
            acc += p;
            acc += match level {
                Some(j) => self.free.rank(j, k)?,
                None => 0,
            };
            out.push(acc);
        }
        let out = Arc::new(out);
        self.filtered.insert((level, big_m), out.clone());
        Ok(out)
    }
}
