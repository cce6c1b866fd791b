//! Presentations attached to the star quotient algebras `A_n`.
//!
//! `P0, …, Pn` stand for the indecomposable projectives `A e_k`.  A morphism
//! `P_s → P_t` is right multiplication by an element of `e_s A e_t`, so a word
//! `g0 ∘ … ∘ gk` is realized by the product `u_gk ⋯ u_g0`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{
    coequifier, coisoinserter, Coisoinserter, Colimit, GeneratorSpec, InsertedPair, Morphism, PresentedCategory,
    PresentedFunctor,
};
use crate::bimodule::{apply_sparse, cyclic_map, Bimodule, SparseColumns};
use crate::error::{Error, Result};
use crate::linalg::{sparsify, Field, Matrix, SparseVec, Q};
use crate::quiver::{build_star_quotient, FiniteDimAlgebra};

fn object_name(k: usize) -> String {
    format!("P{k}")
}

/// The category of indecomposable projective `A_n`-modules, by generators
/// `a_k: P_k → P_0`, `b_k: P_0 → P_k`, `c: P_0 → P_0` and relations.
pub fn indecomposable_projectives(n: usize, length_cap: usize) -> Result<PresentedCategory> {
    if n == 0 {
        return Err(Error::InvalidInput("the star needs at least one leaf".into()));
    }
    let names: Vec<String> = (0..=n).map(object_name).collect();
    let objects: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut gens = Vec::new();
    for k in 1..=n {
        gens.push(GeneratorSpec::new(&format!("a{k}"), &names[k], "P0"));
    }
    for k in 1..=n {
        gens.push(GeneratorSpec::new(&format!("b{k}"), "P0", &names[k]));
    }
    gens.push(GeneratorSpec::new("c", "P0", "P0"));
    let free = PresentedCategory::free(&objects, &gens, length_cap)?;
    let mut rels = Vec::new();
    for k in 1..=n {
        rels.push(free.parse(&[(1, &format!("a{k} b{k}")), (-1, "c")])?);
        for l in 1..=n {
            rels.push(free.parse(&[(1, &format!("b{l} a{k}"))])?);
        }
        rels.push(free.parse(&[(1, &format!("c a{k}"))])?);
        rels.push(free.parse(&[(1, &format!("b{k} c"))])?);
    }
    rels.push(free.parse(&[(1, "c c")])?);
    free.with_relations(rels)
}

/// A functor from a presented category into `R`-proj, sending objects to
/// vertices and generators to elements of `R`.
#[derive(Clone, Debug)]
pub struct ProjectiveRealization {
    pub algebra: Arc<FiniteDimAlgebra>,
    pub vertex: Vec<usize>,
    pub images: Vec<Vec<Q>>,
}

/// Dimension of a realized Hom space against the expected `dim e_v R e_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomComparison {
    pub source: usize,
    pub target: usize,
    pub presented: usize,
    pub rank: usize,
    pub expected: usize,
}

impl HomComparison {
    pub fn matches(&self) -> bool {
        self.presented == self.rank && self.rank == self.expected
    }
}

impl ProjectiveRealization {
    /// Builds the realization from images of the declared generators,
    /// inverting them in `R` for the formal inverses.
    pub fn from_declared(
        cat: &PresentedCategory,
        algebra: Arc<FiniteDimAlgebra>,
        vertex: Vec<usize>,
        declared: Vec<Vec<Q>>,
    ) -> Result<Self> {
        if declared.len() != cat.declared_count() || vertex.len() != cat.objects().len() {
            return Err(Error::DimensionMismatch { expected: cat.declared_count(), found: declared.len() });
        }
        let mut images = declared;
        for g in cat.declared_count()..cat.generators().len() {
            let partner = cat.generators()[g].inverse.unwrap();
            let gen = &cat.generators()[partner];
            let inv = invert(&algebra, &images[partner], vertex[gen.source], vertex[gen.target])
                .ok_or_else(|| Error::NotInvertible(format!("image of {}", gen.name)))?;
            images.push(inv);
        }
        Ok(ProjectiveRealization { algebra, vertex, images })
    }

    pub fn realize(&self, m: &Morphism) -> Vec<Q> {
        let a = &self.algebra;
        let mut out = vec![Q::zero(); a.dim()];
        for (w, c) in &m.terms {
            let mut acc = a.basis_vector(a.idempotent(self.vertex[m.source]));
            for &g in w.iter().rev() {
                acc = a.mul(&acc, &self.images[g]);
            }
            for (o, x) in out.iter_mut().zip(acc) {
                *o = o.clone() + &(x * c);
            }
        }
        out
    }

    /// Images lie in the right corners, relations vanish and inverses invert.
    pub fn check(&self, cat: &PresentedCategory) -> Result<()> {
        let a = &self.algebra;
        let e = |v: usize| a.basis_vector(a.idempotent(v));
        for (g, gen) in cat.generators().iter().enumerate() {
            let (s, t) = (e(self.vertex[gen.source]), e(self.vertex[gen.target]));
            let u = &self.images[g];
            if a.mul(&a.mul(&s, u), &t) != *u {
                return Err(Error::NotAMorphism(format!("image of {} is outside its corner", gen.name)));
            }
            if let Some(h) = gen.inverse {
                if a.mul(u, &self.images[h]) != s {
                    return Err(Error::NotAMorphism(format!("image of {} is not inverted", gen.name)));
                }
            }
        }
        for r in cat.relations() {
            if self.realize(r).iter().any(|x| !x.is_zero()) {
                return Err(Error::NotAMorphism(format!("relation {} is not satisfied", cat.format(r))));
            }
        }
        Ok(())
    }

    /// Compares every Hom space (enumerated at the length cap) with its
    /// realization.
    pub fn compare_homs(&self, cat: &PresentedCategory) -> Result<Vec<HomComparison>> {
        let a = &self.algebra;
        let n = cat.objects().len();
        let mut out = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let h = cat.hom_basis(x, y)?;
                let cols: Vec<Vec<Q>> = h.words.iter().map(|w| self.realize(&Morphism::word(x, y, w.clone()))).collect();
                let rank = if cols.is_empty() { 0 } else { Matrix::from_columns(a.dim(), &cols).rank() };
                out.push(HomComparison {
                    source: x,
                    target: y,
                    presented: h.dim(),
                    rank,
                    expected: a.peirce_dim(self.vertex[x], self.vertex[y]),
                });
            }
        }
        Ok(out)
    }

    /// Writes an element of `e_s R e_t` as a morphism `s → t`, using a Hom
    /// basis of the presented category.
    pub fn preimage(&self, cat: &PresentedCategory, s: usize, t: usize, u: &[Q]) -> Result<Morphism> {
        let h = cat.hom_basis(s, t)?;
        let mut m = Morphism::zero(s, t);
        if u.iter().all(|x| x.is_zero()) {
            return Ok(m);
        }
        let words: Vec<Morphism> = h.words.iter().map(|w| Morphism::word(s, t, w.clone())).collect();
        let cols: Vec<Vec<Q>> = words.iter().map(|w| self.realize(w)).collect();
        if cols.is_empty() {
            return Err(Error::NotAMorphism("element has no preimage".into()));
        }
        let coords = Matrix::from_columns(self.algebra.dim(), &cols)
            .solve(u)
            .ok_or_else(|| Error::NotAMorphism("element has no preimage".into()))?;
        for (w, c) in words.iter().zip(coords) {
            m = m.add(&w.scale(&c))?;
        }
        Ok(m)
    }
}

/// Two-sided inverse of `u ∈ e_s R e_t`, if one exists in `e_t R e_s`.
fn invert(a: &FiniteDimAlgebra, u: &[Q], s: usize, t: usize) -> Option<Vec<Q>> {
    let es = a.basis_vector(a.idempotent(s));
    let et = a.basis_vector(a.idempotent(t));
    let x = a.left_mul_matrix(u).solve(&es)?;
    let x = a.mul(&a.mul(&et, &x), &es);
    (a.mul(u, &x) == es && a.mul(&x, u) == et).then_some(x)
}

/// The standard realization of [`indecomposable_projectives`] in `A_n`-proj.
pub fn standard_realization(cat: &PresentedCategory, a: &Arc<FiniteDimAlgebra>, n: usize) -> Result<ProjectiveRealization> {
    let el = |name: &str| {
        a.basis_index(name)
            .map(|i| a.basis_vector(i))
            .ok_or_else(|| Error::AlgebraMismatch(format!("no basis element {name}")))
    };
    let mut imgs = Vec::new();
    for k in 1..=n {
        imgs.push(el(&format!("a{k}"))?);
    }
    for k in 1..=n {
        imgs.push(el(&format!("b{k}"))?);
    }
    imgs.push(el("c")?);
    ProjectiveRealization::from_declared(cat, a.clone(), (0..=n).collect(), imgs)
}

/// The full subcategory of `A_n`-bimodules on `A, F_0, …, F_n`, given by a
/// generating set of bimodule maps.
#[derive(Clone, Debug)]
pub struct PrincipalSource {
    pub n: usize,
    pub algebra: Arc<FiniteDimAlgebra>,
    pub category: PresentedCategory,
    pub bimodules: Vec<Bimodule>,
    pub maps: Vec<SparseColumns>,
}

fn element(a: &FiniteDimAlgebra, name: &str) -> Result<usize> {
    a.basis_index(name).ok_or_else(|| Error::AlgebraMismatch(format!("no basis element {name}")))
}

fn tensor_index(m: &Bimodule, left: &str, right: &str) -> Result<usize> {
    let name = format!("{left}⊗{right}");
    m.basis_names()
        .iter()
        .position(|x| *x == name)
        .ok_or_else(|| Error::InvalidInput(format!("no basis element {name}")))
}

pub fn principal_source(n: usize, length_cap: usize) -> Result<PrincipalSource> {
    let a = Arc::new(build_star_quotient(n)?);
    let mut bimodules = vec![Bimodule::regular(&a)];
    for k in 0..=n {
        bimodules.push(Bimodule::projective(&a, k, &a, 0)?);
    }
    let names: Vec<String> = core::iter::once("A".into()).chain((0..=n).map(|k| format!("F{k}"))).collect();
    let f = |k: usize| k + 1;
    let mut gens = Vec::new();
    let mut maps = Vec::new();
    let unit = |m: &Bimodule, l: &str, r: &str| -> Result<SparseVec<Q>> { Ok(vec![(tensor_index(m, l, r)?, Q::one())]) };
    for k in 1..=n {
        gens.push(GeneratorSpec::new(&format!("a{k}⊗e0"), &names[f(k)], &names[f(0)]));
        let u = unit(&bimodules[f(0)], &format!("a{k}"), "e0")?;
        maps.push(cyclic_map(&bimodules[f(k)], &bimodules[f(0)], &u)?);
    }
    for k in 1..=n {
        gens.push(GeneratorSpec::new(&format!("b{k}⊗e0"), &names[f(0)], &names[f(k)]));
        let u = unit(&bimodules[f(k)], &format!("b{k}"), "e0")?;
        maps.push(cyclic_map(&bimodules[f(0)], &bimodules[f(k)], &u)?);
    }
    for (name, l, r) in [("c⊗e0", "c", "e0"), ("e0⊗c", "e0", "c")] {
        gens.push(GeneratorSpec::new(name, &names[f(0)], &names[f(0)]));
        let u = unit(&bimodules[f(0)], l, r)?;
        maps.push(cyclic_map(&bimodules[f(0)], &bimodules[f(0)], &u)?);
    }
    // z: A → F_0, 1 ↦ e0⊗c + c⊗e0 + Σ a_j⊗b_j
    let f0 = &bimodules[f(0)];
    let mut z = vec![(tensor_index(f0, "e0", "c")?, Q::one()), (tensor_index(f0, "c", "e0")?, Q::one())];
    for j in 1..=n {
        z.push((tensor_index(f0, &format!("a{j}"), &format!("b{j}"))?, Q::one()));
    }
    z.sort_by_key(|p| p.0);
    gens.push(GeneratorSpec::new("z", "A", &names[f(0)]));
    maps.push(cyclic_map(&bimodules[0], f0, &z)?);
    // ι: F_0 → A, x⊗y ↦ xy
    gens.push(GeneratorSpec::new("ι", &names[f(0)], "A"));
    maps.push(cyclic_map(f0, &bimodules[0], &vec![(element(&a, "e0")?, Q::one())])?);
    let objects: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let category = PresentedCategory::free(&objects, &gens, length_cap)?;
    Ok(PrincipalSource { n, algebra: a, category, bimodules, maps })
}

impl PrincipalSource {
    /// `C^S` object of `X ⊗ A e_i`: `P_i` for `X = A`, `P_p` for `X = F_p`.
    fn evaluated_object(&self, x: usize, i: usize) -> usize {
        if x == 0 {
            i
        } else {
            x - 1
        }
    }

    /// Generator of the right Peirce component `X e_i`.
    fn peirce_generator(&self, x: usize, i: usize) -> Result<SparseVec<Q>> {
        let a = &self.algebra;
        let idx = if x == 0 {
            a.idempotent(i)
        } else {
            tensor_index(&self.bimodules[x], &format!("e{}", x - 1), &format!("b{i}"))?
        };
        Ok(vec![(idx, Q::one())])
    }

    /// Reads an element of `Y e_i` as an element of `A e_q` (for `Y = F_q`,
    /// `x ⊗ b_i ↦ x`) or of `A e_i` (for `Y = A`).
    fn as_algebra_element(&self, y: usize, i: usize, v: &SparseVec<Q>) -> Result<Vec<Q>> {
        let a = &self.algebra;
        if y == 0 {
            return Ok(crate::linalg::densify(v, a.dim()));
        }
        let m = &self.bimodules[y];
        let q = y - 1;
        let xs: Vec<usize> = (0..a.dim()).filter(|&x| a.basis()[x].source == q).collect();
        let ys: Vec<usize> = (0..a.dim()).filter(|&r| a.basis()[r].target == 0).collect();
        let bi = element(a, &format!("b{i}"))?;
        let mut out = vec![Q::zero(); a.dim()];
        for (idx, c) in v {
            let (xp, yp) = (idx / ys.len(), idx % ys.len());
            if ys[yp] != bi {
                return Err(Error::NotAMorphism(format!("{} is not of the form x⊗b{i}", m.basis_names()[*idx])));
            }
            out[xs[xp]] = c.clone();
        }
        Ok(out)
    }

    /// The functor `X ↦ X ⊗_A A e_i` into the presented projectives, with
    /// generator images computed from the bimodule maps.
    pub fn evaluation_functor(&self, cs: &PresentedCategory, real: &ProjectiveRealization, i: usize) -> Result<PresentedFunctor> {
        if i == 0 || i > self.n {
            return Err(Error::InvalidInput(format!("evaluation index {i} out of range")));
        }
        let src = &self.category;
        let object_map: Vec<usize> = (0..src.objects().len()).map(|x| self.evaluated_object(x, i)).collect();
        let mut images = Vec::with_capacity(self.maps.len());
        for (g, map) in self.maps.iter().enumerate() {
            let gen = &src.generators()[g];
            let v = apply_sparse(map, &self.peirce_generator(gen.source, i)?);
            let u = self.as_algebra_element(gen.target, i, &v)?;
            images.push(real.preimage(cs, object_map[gen.source], object_map[gen.target], &u)?);
        }
        PresentedFunctor::from_declared(src, cs, object_map, images)
    }

    /// Component at `F_p` of the transport `F_p e_j → F_p e_k`, `(·a_k)⁻¹ ∘ (·a_j)`,
    /// as an endomorphism of `P_p`.
    pub fn transport_component(
        &self,
        cs: &PresentedCategory,
        real: &ProjectiveRealization,
        p: usize,
        j: usize,
        k: usize,
    ) -> Result<Morphism> {
        let a = &self.algebra;
        let m = &self.bimodules[p + 1];
        let aj = vec![(element(a, &format!("a{j}"))?, Q::one())];
        let ak = vec![(element(a, &format!("a{k}"))?, Q::one())];
        let w = m.right_apply(&self.peirce_generator(p + 1, j)?, &aj);
        let block: Vec<usize> = (0..m.dim()).filter(|&x| m.peirce()[x].1 == k).collect();
        let cols: Vec<Vec<Q>> = block
            .iter()
            .map(|&x| crate::linalg::densify(&m.right_apply(&vec![(x, Q::one())], &ak), m.dim()))
            .collect();
        let coords = Matrix::from_columns(m.dim(), &cols)
            .solve(&crate::linalg::densify(&w, m.dim()))
            .ok_or_else(|| Error::NotAMorphism(format!("a{j} does not factor through a{k}")))?;
        let pre: Vec<Q> = {
            let mut v = vec![Q::zero(); m.dim()];
            for (x, c) in block.iter().zip(coords) {
                v[*x] = c;
            }
            v
        };
        let u = self.as_algebra_element(p + 1, k, &sparsify(&pre))?;
        real.preimage(cs, p, p, &u)
    }
}

/// Checks that `blocks` partitions `{0, …, n}` with `{0}` a block, and
/// returns the blocks sorted by least element with sorted entries.
pub fn normalize_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let mut seen = vec![false; n + 1];
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
    for b in blocks {
        if b.is_empty() {
            return Err(Error::InvalidInput("empty block".into()));
        }
        let mut b = b.clone();
        b.sort_unstable();
        for &k in &b {
            if k > n || seen[k] {
                return Err(Error::InvalidInput(format!("index {k} repeated or out of range")));
            }
            seen[k] = true;
        }
        out.push(b);
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidInput("blocks do not cover every index".into()));
    }
    out.sort_by_key(|b| b[0]);
    if out[0] != [0] {
        return Err(Error::InvalidInput("0 must form a block on its own".into()));
    }
    Ok(out)
}

/// Consecutive pairs `(i_l, i_{l+1})` inside each block.
pub fn index_pairs(blocks: &[Vec<usize>]) -> Vec<(usize, usize)> {
    blocks.iter().flat_map(|b| b.windows(2).map(|w| (w[0], w[1]))).collect()
}

/// Vertex of `A_r` that each index is sent to.
pub fn block_vertices(n: usize, blocks: &[Vec<usize>]) -> Vec<usize> {
    let mut v = vec![0; n + 1];
    for (m, b) in blocks.iter().enumerate() {
        for &k in b {
            v[k] = m;
        }
    }
    v
}

/// The two-step colimit attached to a partition: a coisoinserter over the
/// projectives, then a coequifier identifying the inserted components on
/// `F_0, …, F_n` with the transports.
#[derive(Clone, Debug)]
pub struct PartitionColimit {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
    pub pairs: Vec<(usize, usize)>,
    pub base: PresentedCategory,
    pub inserted: Coisoinserter,
    pub coequified: Colimit,
    /// `base → coequified`.
    pub cone: PresentedFunctor,
}

pub fn partition_colimit(n: usize, blocks: &[Vec<usize>], length_cap: usize) -> Result<PartitionColimit> {
    let blocks = normalize_blocks(n, blocks)?;
    let base = indecomposable_projectives(n, length_cap)?;
    let source = principal_source(n, length_cap)?;
    let real = standard_realization(&base, &source.algebra, n)?;
    let pairs = index_pairs(&blocks);
    let mut inserted_pairs = Vec::with_capacity(pairs.len());
    for &(i, j) in &pairs {
        inserted_pairs.push(InsertedPair {
            label: format!("[{i},{j}]"),
            f: source.evaluation_functor(&base, &real, i)?,
            g: source.evaluation_functor(&base, &real, j)?,
        });
    }
    let inserted = coisoinserter(&source.category, &base, &inserted_pairs)?;
    let cw = &inserted.colimit.category;
    let mut equations = Vec::new();
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for q in 0..=n {
            let xi = cw.generator_morphism(inserted.components[p][q + 1]);
            let t = source.transport_component(&base, &real, q, i, j)?;
            let t = inserted.colimit.cone.apply(cw, &t)?;
            equations.push((xi, t));
        }
    }
    let coequified = coequifier(cw, &equations)?;
    let cone = inserted.colimit.cone.then(&coequified.cone, &coequified.category)?;
    Ok(PartitionColimit { n, blocks, pairs, base, inserted, coequified, cone })
}

impl PartitionColimit {
    pub fn rank(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn category(&self) -> &PresentedCategory {
        &self.coequified.category
    }

    /// The comparison functor into `A_r`-proj: `P_k ↦ A_r e_{𝔓(k)}`, arrows to
    /// the arrows of the block and inserted components to identities.
    pub fn model_realization(&self) -> Result<ProjectiveRealization> {
        let r = self.rank();
        let ar = Arc::new(build_star_quotient(r)?);
        let v = block_vertices(self.n, &self.blocks);
        let cat = self.category();
        let el = |name: &str| {
            ar.basis_index(name)
                .map(|i| ar.basis_vector(i))
                .ok_or_else(|| Error::AlgebraMismatch(format!("no basis element {name}")))
        };
        let mut imgs = Vec::with_capacity(cat.declared_count());
        for g in &cat.generators()[..cat.declared_count()] {
            let name = g.name.as_str();
            let img = if let Some(k) = name.strip_prefix('a').and_then(|s| s.parse::<usize>().ok()) {
                el(&format!("a{}", v[k]))?
            } else if let Some(k) = name.strip_prefix('b').and_then(|s| s.parse::<usize>().ok()) {
                el(&format!("b{}", v[k]))?
            } else if name == "c" {
                el("c")?
            } else if name.starts_with('ξ') {
                ar.basis_vector(ar.idempotent(v[g.source]))
            } else {
                return Err(Error::InvalidInput(format!("unexpected generator {name}")));
            };
            imgs.push(img);
        }
        ProjectiveRealization::from_declared(cat, ar, v, imgs)
    }
}

/// Per-pair counts for the coisoinserter step.
pub fn inserted_counts(c: &PartitionColimit) -> (usize, usize) {
    let cw = &c.inserted.colimit.category;
    (cw.declared_count() - c.base.declared_count(), c.inserted.colimit.added_relations.len())
}

/// Relations added by the coequifier that survive simplification, i.e. the
/// relations of the result that do not already hold in the base.
pub fn surviving_relations(c: &PartitionColimit) -> Result<Vec<Morphism>> {
    let cat = c.category();
    let mut out = Vec::new();
    for r in cat.relations() {
        let mentions_inserted = r.terms.keys().flatten().any(|&g| cat.generators()[g].name.starts_with('ξ'));
        if mentions_inserted {
            out.push(r.clone());
        }
    }
    let mut uniq: BTreeMap<String, Morphism> = BTreeMap::new();
    for r in out {
        uniq.insert(cat.format(&r), r);
    }
    Ok(uniq.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presented::{additive_karoubi_envelope, DEFAULT_LENGTH_CAP};

    #[test]
    fn projectives_presentation_matches_algebra() {
        for n in 1..=3 {
            let cat = indecomposable_projectives(n, DEFAULT_LENGTH_CAP).unwrap();
            assert!(cat.completion().confluent_at_cap());
            let a = Arc::new(build_star_quotient(n).unwrap());
            let real = standard_realization(&cat, &a, n).unwrap();
            real.check(&cat).unwrap();
            for c in real.compare_homs(&cat).unwrap() {
                assert!(c.matches(), "{c:?}");
            }
        }
    }

    #[test]
    fn evaluation_functors_are_functors() {
        let n = 2;
        let base = indecomposable_projectives(n, DEFAULT_LENGTH_CAP).unwrap();
        let src = principal_source(n, DEFAULT_LENGTH_CAP).unwrap();
        let real = standard_realization(&base, &src.algebra, n).unwrap();
        for i in 1..=n {
            let f = src.evaluation_functor(&base, &real, i).unwrap();
            f.check(&src.category, &base).unwrap();
            let z = src.category.generator_index("z").unwrap();
            assert_eq!(base.format(&f.images[z]), format!("a{i}"));
            let iota = src.category.generator_index("ι").unwrap();
            assert_eq!(base.format(&f.images[iota]), format!("b{i}"));
            let e0c = src.category.generator_index("e0⊗c").unwrap();
            assert!(f.images[e0c].is_zero());
        }
    }

    #[test]
    fn one_block_of_two() {
        let c = partition_colimit(2, &[vec![0], vec![1, 2]], DEFAULT_LENGTH_CAP).unwrap();
        assert_eq!(inserted_counts(&c), (4, 7));
        let cat = c.category();
        assert!(cat.completion().confluent_at_cap());
        assert_eq!(cat.declared_count(), 6);
        let xi = cat.generator_index("ξ[1,2](A)").unwrap();
        let h = cat.hom_basis(1, 2).unwrap();
        assert_eq!(h.words, vec![vec![xi]]);
        let surviving: Vec<String> = surviving_relations(&c).unwrap().iter().map(|r| cat.format(r)).collect();
        assert_eq!(surviving.len(), 2, "{surviving:?}");
        let real = c.model_realization().unwrap();
        real.check(cat).unwrap();
        for cmp in real.compare_homs(cat).unwrap() {
            assert_eq!(cmp.rank, cmp.presented, "{cmp:?}");
        }
        let env = additive_karoubi_envelope(cat).unwrap();
        assert_eq!(env.class_count(), 2);
    }

    #[test]
    fn discrete_partition_adds_nothing() {
        let c = partition_colimit(2, &[vec![0], vec![1], vec![2]], DEFAULT_LENGTH_CAP).unwrap();
        assert_eq!(inserted_counts(&c), (0, 0));
        assert_eq!(c.category().generators().len(), c.base.generators().len());
    }

    #[test]
    fn malformed_partitions_are_rejected() {
        assert!(normalize_blocks(2, &[vec![0, 1], vec![2]]).is_err());
        assert!(normalize_blocks(2, &[vec![0], vec![1]]).is_err());
        assert!(normalize_blocks(2, &[vec![0], vec![1, 1, 2]]).is_err());
    }
}
