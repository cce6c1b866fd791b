use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::scalar::Field;
use super::subspace::Subspace;

/// Sparse vector as `(index, value)` pairs with strictly increasing indices
/// and no stored zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

/// Row echelon form built one row at a time.
///
/// Each stored row is indexed by its leading column and starts with a 1
/// there. Rows are not back-reduced; reduction of a vector processes pivots
/// in increasing column order, which is enough for echelon form.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F> {
    ncols: usize,
    rows: Vec<Option<SparseVec<F>>>,
    rank: usize,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon { ncols, rows: vec![None; ncols], rank: 0 }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows[c].is_some()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.rows[c].is_none()).collect()
    }

    /// Normal form of `v` modulo the row space; it is supported on free columns.
    pub fn reduce(&self, v: SparseVec<F>) -> SparseVec<F> {
        let mut work: BTreeMap<usize, F> = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        let mut out = Vec::new();
        while let Some((c, val)) = work.pop_first() {
            match &self.rows[c] {
                Some(row) => {
                    for (j, x) in &row[1..] {
                        let cur = work.remove(j).unwrap_or_else(F::zero);
                        let next = cur - &(val.clone() * x);
                        if !next.is_zero() {
                            work.insert(*j, next);
                        }
                    }
                }
                None => out.push((c, val)),
            }
        }
        out
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let r = self.reduce(v);
        let Some((lead, first)) = r.first().cloned() else {
            return false;
        };
        let inv = first.inv().expect("nonzero leading entry");
        let row: SparseVec<F> = r.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        self.rows[lead] = Some(row);
        self.rank += 1;
        true
    }

    /// Null space of the stored rows.
    pub fn kernel(&self) -> Subspace<F> {
        let pivots_desc: Vec<usize> = (0..self.ncols).rev().filter(|&c| self.rows[c].is_some()).collect();
        let mut basis = Vec::new();
        for f in self.free_columns() {
            let mut x = vec![F::zero(); self.ncols];
            x[f] = F::one();
            for &p in &pivots_desc {
                let row = self.rows[p].as_ref().unwrap();
                let mut acc = F::zero();
                for (c, val) in &row[1..] {
                    if !x[*c].is_zero() {
                        acc = acc + &(val.clone() * &x[*c]);
                    }
                }
                x[p] = -acc;
            }
            basis.push(x);
        }
        Subspace::from_spanning(self.ncols, basis)
    }
}

/// Dense view of a sparse vector.
pub fn densify<F: Field>(v: &SparseVec<F>, len: usize) -> Vec<F> {
    let mut d = vec![F::zero(); len];
    for (i, x) in v {
        d[*i] = x.clone();
    }
    d
}

/// Sparse view of a dense vector.
pub fn sparsify<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}
