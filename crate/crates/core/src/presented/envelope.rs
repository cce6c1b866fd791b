use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{GenWord, HomBasis, Morphism, PresentedCategory, Terms};
use crate::error::{Error, Result};
use crate::linalg::{split_idempotents, Field, Matrix, Subspace, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indecomposable {
    pub object: usize,
    pub idempotent: Morphism,
}

/// Indecomposable objects of the additive idempotent completion, up to
/// isomorphism.
#[derive(Clone, Debug)]
pub struct KaroubiEnvelope {
    pub indecomposables: Vec<Indecomposable>,
    pub class_of: Vec<usize>,
    /// `hom_dims[a][b] = dim Hom(a, b)` between class representatives.
    pub hom_dims: Vec<Vec<usize>>,
    /// `multiplicities[x][a]`: how often class `a` occurs in object `x`.
    pub multiplicities: Vec<Vec<usize>>,
}

impl KaroubiEnvelope {
    pub fn class_count(&self) -> usize {
        self.hom_dims.len()
    }

    /// Representative indecomposable of each class.
    pub fn representatives(&self) -> Vec<&Indecomposable> {
        (0..self.class_count())
            .map(|a| &self.indecomposables[self.class_of.iter().position(|&c| c == a).unwrap()])
            .collect()
    }
}

struct Homs<'a> {
    cat: &'a PresentedCategory,
    bases: Vec<Vec<HomBasis>>,
    index: Vec<Vec<BTreeMap<GenWord, usize>>>,
}

impl<'a> Homs<'a> {
    fn new(cat: &'a PresentedCategory) -> Result<Self> {
        let n = cat.objects().len();
        let mut bases = Vec::with_capacity(n);
        let mut index = Vec::with_capacity(n);
        for x in 0..n {
            let row: Vec<HomBasis> = (0..n).map(|y| cat.hom_basis(x, y)).collect::<Result<_>>()?;
            index.push(row.iter().map(|h| h.words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect()).collect());
            bases.push(row);
        }
        Ok(Homs { cat, bases, index })
    }

    fn dim(&self, x: usize, y: usize) -> usize {
        self.bases[x][y].dim()
    }

    fn coords(&self, m: &Morphism) -> Result<Vec<Q>> {
        let nf = self.cat.normal_form(m)?;
        let mut v = vec![Q::zero(); self.dim(m.source, m.target)];
        for (w, c) in &nf.terms {
            let i = self.index[m.source][m.target]
                .get(w)
                .ok_or_else(|| Error::Certification("normal form outside the enumerated basis".into()))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    fn element(&self, x: usize, y: usize, coords: &[Q]) -> Morphism {
        let mut terms = Terms::new();
        for (w, c) in self.bases[x][y].words.iter().zip(coords) {
            if !c.is_zero() {
                terms.insert(w.clone(), c.clone());
            }
        }
        Morphism { source: x, target: y, terms }
    }

    fn basis_morphisms(&self, x: usize, y: usize) -> Vec<Morphism> {
        self.bases[x][y].words.iter().map(|w| Morphism::word(x, y, w.clone())).collect()
    }

    /// Matrix of `u ∘ −` on End(x).
    fn left_mul(&self, u: &Morphism) -> Result<Matrix<Q>> {
        let x = u.source;
        let cols: Vec<Vec<Q>> = self
            .basis_morphisms(x, x)
            .iter()
            .map(|w| self.coords(&u.compose(w)?))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(self.dim(x, x), &cols))
    }

    /// `f ∘ Hom(x, y) ∘ e` as a list of morphisms spanning it.
    fn corner(&self, e: &Indecomposable, f: &Indecomposable) -> Result<Vec<Morphism>> {
        let mut vecs = Vec::new();
        for w in self.basis_morphisms(e.object, f.object) {
            vecs.push(self.coords(&f.idempotent.compose(&w)?.compose(&e.idempotent)?)?);
        }
        let s = Subspace::from_spanning(self.dim(e.object, f.object), vecs);
        Ok(s.basis().iter().map(|v| self.element(e.object, f.object, v)).collect())
    }

    fn is_nilpotent(&self, u: &Morphism) -> Result<bool> {
        let m = self.left_mul(u)?;
        let mut p = m.clone();
        for _ in 0..self.dim(u.source, u.source) {
            if p.is_zero() {
                return Ok(true);
            }
            p = p.mul(&m);
        }
        Ok(p.is_zero())
    }
}

/// Splits each object of a Hom-finite presented category into
/// indecomposables and sorts them into isomorphism classes.  Fails if some
/// Hom space has not saturated at the length cap.
pub fn additive_karoubi_envelope(cat: &PresentedCategory) -> Result<KaroubiEnvelope> {
    let homs = Homs::new(cat)?;
    let n = cat.objects().len();
    let mut indecomposables = Vec::new();
    for x in 0..n {
        let d = homs.dim(x, x);
        let basis = homs.basis_morphisms(x, x);
        let mats: Vec<Matrix<Q>> = basis.iter().map(|u| homs.left_mul(u)).collect::<Result<_>>()?;
        let id = homs.coords(&Morphism::identity(x))?;
        for e in split_idempotents(&mats, &Matrix::identity(d))? {
            let coords = e.mul_vec(&id);
            indecomposables.push(Indecomposable { object: x, idempotent: homs.element(x, x, &coords) });
        }
    }
    let mut class_of: Vec<usize> = Vec::with_capacity(indecomposables.len());
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..indecomposables.len() {
        let mut found = None;
        for (c, &r) in reps.iter().enumerate() {
            if isomorphic(&homs, &indecomposables[i], &indecomposables[r])? {
                found = Some(c);
                break;
            }
        }
        match found {
            Some(c) => class_of.push(c),
            None => {
                class_of.push(reps.len());
                reps.push(i);
            }
        }
    }
    let k = reps.len();
    let mut hom_dims = vec![vec![0; k]; k];
    for a in 0..k {
        for b in 0..k {
            hom_dims[a][b] = homs.corner(&indecomposables[reps[a]], &indecomposables[reps[b]])?.len();
        }
    }
    let mut multiplicities = vec![vec![0; k]; n];
    for (i, ind) in indecomposables.iter().enumerate() {
        multiplicities[ind.object][class_of[i]] += 1;
    }
    Ok(KaroubiEnvelope { indecomposables, class_of, hom_dims, multiplicities })
}

/// In a local endomorphism ring a product is invertible exactly when it is
/// not nilpotent, and the non-invertible elements form the radical.
fn isomorphic(homs: &Homs<'_>, p: &Indecomposable, q: &Indecomposable) -> Result<bool> {
    let there = homs.corner(p, q)?;
    let back = homs.corner(q, p)?;
    for u in &there {
        for v in &back {
            let vu = v.compose(u)?;
            if !homs.is_nilpotent(&vu)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presented::GeneratorSpec;

    #[test]
    fn idempotent_endomorphism_splits() {
        // End(X) = k × k, spanned by id and an idempotent p.
        let free = PresentedCategory::free(&["X"], &[GeneratorSpec::new("p", "X", "X")], 8).unwrap();
        let cat = free.with_relations(vec![free.parse(&[(1, "p p"), (-1, "p")]).unwrap()]).unwrap();
        let env = additive_karoubi_envelope(&cat).unwrap();
        assert_eq!(env.indecomposables.len(), 2);
        assert_eq!(env.class_count(), 2);
        assert_eq!(env.hom_dims, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn isomorphic_objects_merge() {
        let cat = PresentedCategory::free(&["X", "Y"], &[GeneratorSpec::invertible("g", "X", "Y")], 8).unwrap();
        let env = additive_karoubi_envelope(&cat).unwrap();
        assert_eq!(env.indecomposables.len(), 2);
        assert_eq!(env.class_count(), 1);
        assert_eq!(env.multiplicities, vec![vec![1], vec![1]]);
    }

    #[test]
    fn infinite_hom_is_refused() {
        let cat = PresentedCategory::free(&["X"], &[GeneratorSpec::new("x", "X", "X")], 6).unwrap();
        assert!(matches!(additive_karoubi_envelope(&cat), Err(Error::NotSaturated { .. })));
    }
}
