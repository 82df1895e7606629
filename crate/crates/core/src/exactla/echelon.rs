//! Fraction-free sparse row echelon engine over the integers.
//!
//! Rows are kept primitive (content 1) with a positive leading entry. New
//! rows are reduced on their leading term only; full back-substitution to
//! reduced echelon form happens once, in [`Echelon::make_reduced`].

use std::cmp::Ordering;

use super::int::Int;

/// Sparse integer row: strictly increasing column indices, no stored zeros.
pub type IntRow = Vec<(u32, Int)>;

const NONE: u32 = u32::MAX;

/// `a*r - b*p` on sparse rows.
pub(crate) fn combine(a: &Int, r: &[(u32, Int)], b: &Int, p: &[(u32, Int)]) -> IntRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let ord = match (r.get(i), p.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                let v = r[i].1.mul(a);
                out.push((r[i].0, v));
                i += 1;
            }
            Ordering::Greater => {
                let v = p[j].1.mul(b).neg();
                if !v.is_zero() {
                    out.push((p[j].0, v));
                }
                j += 1;
            }
            Ordering::Equal => {
                let v = Int::cross(a, &r[i].1, b, &p[j].1);
                if !v.is_zero() {
                    out.push((r[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn content(row: &[(u32, Int)]) -> Int {
    let mut g = Int::ZERO;
    for (_, v) in row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading entry positive.
pub(crate) fn make_primitive(row: &mut IntRow) {
    if row.is_empty() {
        return;
    }
    let mut g = content(row);
    if row[0].1.is_negative() {
        g = g.neg();
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

/// Sorts by column, merges duplicates and drops zeros.
pub fn normalize_row(mut row: Vec<(u32, Int)>) -> IntRow {
    row.sort_by_key(|e| e.0);
    let mut out: IntRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = last.1.add(&v),
            _ => out.push((c, v)),
        }
        if out.last().is_some_and(|e| e.1.is_zero()) {
            out.pop();
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivot_of_col: Vec<u32>,
    rows: Vec<IntRow>,
    reduced: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon { ncols, pivot_of_col: vec![NONE; ncols], rows: Vec::new(), reduced: true }
    }

    /// Identity basis of the full space.
    pub fn full(ncols: usize) -> Echelon {
        let rows = (0..ncols as u32).map(|c| vec![(c, Int::ONE)]).collect();
        Echelon { ncols, pivot_of_col: (0..ncols as u32).collect(), rows, reduced: true }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[IntRow] {
        &self.rows
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_of_col[col as usize] != NONE
    }

    pub fn pivot_row(&self, col: u32) -> Option<&IntRow> {
        match self.pivot_of_col[col as usize] {
            NONE => None,
            r => Some(&self.rows[r as usize]),
        }
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.rows.iter().map(|r| r[0].0).collect();
        p.sort_unstable();
        p
    }

    /// Reduces `row` until its leading column is not a pivot. The result is
    /// primitive and only defined up to a nonzero scalar.
    pub fn reduce_leading(&self, mut row: IntRow) -> IntRow {
        let mut dirty = false;
        while let Some((c, v)) = row.first() {
            let Some(p) = self.pivot_row(*c) else { break };
            let (a, b) = if p[0].1.is_one() {
                (Int::ONE, v.clone())
            } else {
                let g = p[0].1.gcd(v);
                (p[0].1.div_exact(&g), v.div_exact(&g))
            };
            row = combine(&a, &row, &b, p);
            if !a.is_one() {
                dirty = true;
                if row.iter().any(|(_, x)| x.is_large()) {
                    make_primitive(&mut row);
                    dirty = false;
                }
            }
        }
        if dirty {
            make_primitive(&mut row);
        }
        row
    }

    /// Inserts a row; returns `true` iff it was independent of the current rows.
    pub fn insert(&mut self, row: IntRow) -> bool {
        debug_assert!(row.iter().all(|(c, _)| (*c as usize) < self.ncols));
        let mut row = self.reduce_leading(row);
        if row.is_empty() {
            return false;
        }
        make_primitive(&mut row);
        let lead = row[0].0;
        self.pivot_of_col[lead as usize] = self.rows.len() as u32;
        self.rows.push(row);
        self.reduced = false;
        true
    }

    /// Eliminates every pivot column from `row` starting at position `from`.
    /// Returns `(residue, scale)` with `residue = scale * (row - span element)`.
    fn reduce_tail(&self, mut row: IntRow, from: usize, skip: u32) -> (IntRow, Int) {
        let mut scale = Int::ONE;
        let mut pos = from;
        while pos < row.len() {
            let c = row[pos].0;
            if c == skip {
                pos += 1;
                continue;
            }
            let Some(p) = self.pivot_row(c) else {
                pos += 1;
                continue;
            };
            let a = p[0].1.clone();
            let b = row[pos].1.clone();
            row = combine(&a, &row, &b, p);
            if !a.is_one() {
                scale = scale.mul(&a);
                let g = content(&row).gcd(&scale);
                if !g.is_one() && !g.is_zero() {
                    for (_, v) in row.iter_mut() {
                        *v = v.div_exact(&g);
                    }
                    scale = scale.div_exact(&g);
                }
            }
        }
        (row, scale)
    }

    /// Full reduction against all pivots: the returned residue is supported on
    /// non-pivot columns and equals `scale` times the canonical coset
    /// representative of `row`.
    pub fn reduce_full(&self, row: IntRow) -> (IntRow, Int) {
        self.reduce_tail(row, 0, NONE)
    }

    pub fn contains(&self, row: IntRow) -> bool {
        self.reduce_leading(row).is_empty()
    }

    /// Back-substitutes so every pivot column is zero outside its own row.
    pub fn make_reduced(&mut self) {
        if self.reduced {
            return;
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r][0].0));
        for r in order {
            let row = std::mem::take(&mut self.rows[r]);
            let lead = row[0].0;
            let (mut row, _) = self.reduce_tail(row, 1, lead);
            make_primitive(&mut row);
            self.rows[r] = row;
        }
        self.reduced = true;
    }

    /// Rows sorted by pivot column.
    pub fn sorted_rows(&self) -> Vec<&IntRow> {
        let mut rows: Vec<&IntRow> = self.rows.iter().collect();
        rows.sort_by_key(|r| r[0].0);
        rows
    }
}
