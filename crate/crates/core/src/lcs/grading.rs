//! Coarse gradings `Z^n / Λ` that the relation ideal respects.
//!
//! Word content is a `Z^n` grading of the free algebra. For a relation whose
//! terms have several contents, the ideal is homogeneous only for the
//! quotient by the lattice `Λ` those contents generate; elimination can then
//! run one class at a time.

use std::collections::HashMap;

/// Integer row echelon form of a lattice, used to pick canonical coset keys.
#[derive(Clone, Debug)]
pub struct ClassLattice {
    n: usize,
    rows: Vec<(usize, Vec<i64>)>,
}

impl ClassLattice {
    pub fn new(n: usize, generators: &[Vec<i64>]) -> ClassLattice {
        let mut pool: Vec<Vec<i64>> = generators.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
        let mut rows = Vec::new();
        for col in 0..n {
            loop {
                pool.retain(|r| r.iter().any(|&x| x != 0));
                let mut with: Vec<usize> = (0..pool.len()).filter(|&k| pool[k][col] != 0).collect();
                if with.is_empty() {
                    break;
                }
                with.sort_by_key(|&k| pool[k][col].abs());
                let piv = with[0];
                if with.len() == 1 {
                    let mut r = pool.swap_remove(piv);
                    if r[col] < 0 {
                        r.iter_mut().for_each(|x| *x = -*x);
                    }
                    rows.push((col, r));
                    break;
                }
                let p = pool[piv].clone();
                for &k in &with[1..] {
                    let q = pool[k][col] / p[col];
                    for (x, y) in pool[k].iter_mut().zip(&p) {
                        *x -= q * y;
                    }
                }
            }
        }
        ClassLattice { n, rows }
    }

    /// Lattice for the ideal of `P` (graded) or `P - 1` (filtered), from the
    /// contents of the words of `P`.
    pub fn for_relation(contents: &[Vec<u32>], filtered: bool) -> ClassLattice {
        let n = contents.first().map_or(0, Vec::len);
        let to_i = |c: &Vec<u32>| c.iter().map(|&x| x as i64).collect::<Vec<i64>>();
        let gens: Vec<Vec<i64>> = if filtered {
            contents.iter().map(to_i).collect()
        } else {
            contents.iter().skip(1).map(|c| to_i(c).iter().zip(to_i(&contents[0])).map(|(a, b)| a - b).collect()).collect()
        };
        ClassLattice::new(n, &gens)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Canonical representative of `v + Λ`.
    pub fn key(&self, v: &[u32]) -> Vec<i64> {
        debug_assert_eq!(v.len(), self.n);
        let mut k: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        for (col, r) in &self.rows {
            let q = k[*col].div_euclid(r[*col]);
            if q != 0 {
                for (x, y) in k.iter_mut().zip(r) {
                    *x -= q * y;
                }
            }
        }
        k
    }
}

/// Dense ids for class keys, in order of first appearance.
#[derive(Default, Debug)]
pub(crate) struct ClassIds {
    ids: HashMap<Vec<i64>, u32>,
}

impl ClassIds {
    pub fn id(&mut self, key: Vec<i64>) -> u32 {
        let next = self.ids.len() as u32;
        *self.ids.entry(key).or_insert(next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_sum_of_squares() {
        let l = ClassLattice::for_relation(&[vec![2, 0], vec![0, 2]], false);
        assert_eq!(l.rank(), 1);
        assert_eq!(l.key(&[3, 1]), l.key(&[1, 3]));
        assert_ne!(l.key(&[2, 2]), l.key(&[3, 1]));
        assert_eq!(l.key(&[0, 4]), l.key(&[4, 0]));
    }

    #[test]
    fn filtered_adds_contents() {
        let l = ClassLattice::for_relation(&[vec![2, 0], vec![0, 2]], true);
        assert_eq!(l.rank(), 2);
        assert_eq!(l.key(&[2, 0]), l.key(&[0, 0]));
        assert_eq!(l.key(&[3, 1]), l.key(&[1, 1]));
        assert_ne!(l.key(&[1, 0]), l.key(&[0, 1]));
    }

    #[test]
    fn monomial_relation_is_fine_grading() {
        let l = ClassLattice::for_relation(&[vec![1, 1, 0]], false);
        assert_eq!(l.rank(), 0);
        assert_ne!(l.key(&[1, 0, 0]), l.key(&[0, 1, 0]));
    }

    #[test]
    fn keys_agree_on_cosets() {
        let gens = [vec![2, -4, 6], vec![0, 3, 3], vec![4, 1, 0]];
        let l = ClassLattice::new(3, &gens);
        assert_eq!(l.rank(), 3);
        for a in 0..5u32 {
            for b in 0..5u32 {
                let v = [a, b + 4, 0];
                let plus = [a + 2, b, 6];
                let plus_both = [a + 6, b + 1, 6];
                assert_eq!(l.key(&v), l.key(&plus));
                assert_eq!(l.key(&v), l.key(&plus_both));
                assert_ne!(l.key(&v), l.key(&[a + 1, b + 4, 0]));
            }
        }
    }
}
