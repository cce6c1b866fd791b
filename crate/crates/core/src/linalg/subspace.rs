use alloc::vec;
use alloc::vec::Vec;

use super::matrix::Matrix;
use super::scalar::Field;
use crate::error::{Error, Result};

/// A subspace of `F^ambient` stored by its canonical RREF basis.
///
/// Two subspaces of the same ambient space are equal iff their bases agree
/// entry for entry, so `PartialEq` is set equality.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![F::zero(); ambient];
                v[i] = F::one();
                v
            })
            .collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dimension");
        }
        let mut m = Matrix::from_rows(vectors);
        let pivots = m.rref_in_place();
        let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the pivot coordinates; zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient);
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() - &(f.clone() * y);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the canonical basis, if `v` belongs to the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let coords: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = vec![F::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in w.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() + &(c.clone() * y);
                }
            }
        }
        if w.as_slice() == v {
            Some(coords)
        } else {
            None
        }
    }

    /// Linear combination of the basis with the given coordinates.
    pub fn combine(&self, coords: &[F]) -> Vec<F> {
        assert_eq!(coords.len(), self.dim());
        let mut w = vec![F::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in w.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() + &(c.clone() * y);
                }
            }
        }
        w
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Self::from_spanning(self.ambient, vs))
    }

    /// Vectors `w` with `w·v = 0` for every `v` in the subspace.
    pub fn annihilator(&self) -> Self {
        if self.basis.is_empty() {
            return Self::full(self.ambient);
        }
        Matrix::from_rows(self.basis.clone()).kernel()
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        Ok(self.basis.iter().all(|b| other.contains(b)))
    }

    /// Image of the subspace under a linear map given as a matrix.
    pub fn image(&self, m: &Matrix<F>) -> Self {
        assert_eq!(m.cols(), self.ambient);
        Self::from_spanning(m.rows(), self.basis.iter().map(|b| m.mul_vec(b)).collect())
    }

    /// Preimage `{v : m·v ∈ target}` of a subspace of the codomain.
    pub fn preimage(m: &Matrix<F>, target: &Self) -> Self {
        assert_eq!(m.rows(), target.ambient);
        let ann = target.annihilator();
        if ann.is_zero() {
            return Self::full(m.cols());
        }
        Matrix::from_rows(ann.basis.clone()).mul(m).kernel()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Q;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::from(x)).collect()
    }

    #[test]
    fn sum_with_zero_and_self_intersection() {
        let a = Subspace::from_spanning(3, vec![v(&[1, 2, 3]), v(&[0, 1, 1])]);
        assert_eq!(a.sum(&Subspace::zero(3)).unwrap(), a);
        assert_eq!(a.intersection(&a).unwrap(), a);
    }

    #[test]
    fn complementary_coordinate_planes() {
        let a = Subspace::from_spanning(4, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]);
        let b = Subspace::from_spanning(4, vec![v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]);
        assert_eq!(a.sum(&b).unwrap().dim(), 4);
        assert_eq!(a.intersection(&b).unwrap().dim(), 0);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::<Q>::zero(2);
        let b = Subspace::<Q>::zero(3);
        assert!(a.sum(&b).is_err());
        assert!(a.intersection(&b).is_err());
    }

    #[test]
    fn canonical_basis_ignores_generating_set() {
        let a = Subspace::from_spanning(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::from_spanning(3, vec![v(&[1, 2, 1]), v(&[2, 1, -1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
    }

    #[test]
    fn coordinates_and_membership() {
        let a = Subspace::from_spanning(3, vec![v(&[1, 0, 2]), v(&[0, 1, 3])]);
        let w = v(&[2, -1, 1]);
        assert!(a.contains(&w));
        let c = a.coordinates(&w).unwrap();
        assert_eq!(a.combine(&c), w);
        assert!(a.coordinates(&v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn preimage_of_subspace() {
        let m = Matrix::<Q>::from_i64_rows(&[&[1, 0], &[0, 0]]);
        let t = Subspace::from_spanning(2, vec![v(&[0, 1])]);
        let p = Subspace::preimage(&m, &t);
        assert_eq!(p, Subspace::from_spanning(2, vec![v(&[0, 1])]));
    }
}
