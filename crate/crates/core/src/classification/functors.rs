//! Functors between categories of projectives: the scalar `χ`, natural
//! transformations, preimages of ideals, refinement functors between the
//! presented colimits, and the naturality test for algebra automorphisms.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::SetPartition;
use crate::bicategory::{IdealFamily, IdealSystem};
use crate::bimodule::Catalog;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace, Q};
use crate::presented::star::{indecomposable_projectives, PartitionColimit, ProjectiveRealization};
use crate::presented::{Morphism, PresentedCategory, PresentedFunctor};
use crate::quiver::{build_star_quotient, FiniteDimAlgebra};

/// The functor from the presented projectives of `A_n` to `A_r`-proj with
/// `a_i ↦ λ_i a_{𝔓(i)}`, `b_i ↦ μ_i b_{𝔓(i)}` and `c ↦ χ c`.
pub fn scaled_functor(
    cat: &PresentedCategory,
    p: &SetPartition,
    lambda: &[Q],
    mu: &[Q],
    chi: &Q,
) -> Result<ProjectiveRealization> {
    let n = p.n;
    if lambda.len() != n || mu.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: lambda.len().min(mu.len()) });
    }
    let ar = Arc::new(build_star_quotient(p.rank())?);
    let el = |name: String, s: &Q| -> Result<Vec<Q>> {
        let i = ar.basis_index(&name).ok_or_else(|| Error::AlgebraMismatch(format!("no basis element {name}")))?;
        let mut v = vec![Q::zero(); ar.dim()];
        v[i] = s.clone();
        Ok(v)
    };
    let mut images = Vec::with_capacity(2 * n + 1);
    for i in 1..=n {
        images.push(el(format!("a{}", p.block_of[i]), &lambda[i - 1])?);
    }
    for i in 1..=n {
        images.push(el(format!("b{}", p.block_of[i]), &mu[i - 1])?);
    }
    images.push(el("c".into(), chi)?);
    let real = ProjectiveRealization::from_declared(cat, ar, p.block_of.clone(), images)?;
    real.check(cat)?;
    Ok(real)
}

/// The scalar by which the functor acts on `Rad End(P_0) = 𝕜c`.
pub fn chi_invariant(cat: &PresentedCategory, f: &ProjectiveRealization) -> Result<Q> {
    let c = cat.generator_index("c").ok_or_else(|| Error::InvalidInput("no generator c".into()))?;
    let img = f.realize(&cat.generator_morphism(c));
    let a = &f.algebra;
    let ci = a.basis_index("c").ok_or_else(|| Error::AlgebraMismatch("no basis element c".into()))?;
    let chi = img[ci].clone();
    if img.iter().enumerate().any(|(i, x)| i != ci && !x.is_zero()) {
        return Err(Error::Certification("image of c is not a multiple of c".into()));
    }
    if chi.is_zero() {
        return Err(Error::NotInvertible("χ = 0, so the functor is not faithful".into()));
    }
    Ok(chi)
}

/// Solutions of the naturality equations between two realizations with the
/// same object map.
#[derive(Clone, Debug, PartialEq)]
pub struct NaturalTransformations {
    pub dim: usize,
    /// whether some solution has an invertible component at every object
    pub invertible_exists: bool,
    /// components `σ_x ∈ e_v R e_v` of each basis solution
    pub basis: Vec<Vec<Vec<Q>>>,
}

pub fn natural_transformations(
    cat: &PresentedCategory,
    f: &ProjectiveRealization,
    g: &ProjectiveRealization,
) -> Result<NaturalTransformations> {
    if f.vertex != g.vertex || f.algebra.name() != g.algebra.name() || f.algebra.dim() != g.algebra.dim() {
        return Err(Error::InvalidInput("functors must agree on objects and target".into()));
    }
    let a = &f.algebra;
    let objects = cat.objects().len();
    // unknowns: coefficients of σ_x on the basis of e_v R e_v
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for x in 0..objects {
        let v = f.vertex[x];
        for i in a.peirce_indices(v, v) {
            unknowns.push((x, i));
        }
    }
    let mut cols: Vec<Vec<Q>> = Vec::with_capacity(unknowns.len());
    for &(x, i) in &unknowns {
        let sigma = a.basis_vector(i);
        let mut col = Vec::new();
        for (h, gen) in cat.generators().iter().enumerate() {
            // g(h) ∘ σ_s − σ_t ∘ f(h), i.e. σ_s·g(h) − f(h)·σ_t
            let mut d = vec![Q::zero(); a.dim()];
            if gen.source == x {
                d = a.mul(&sigma, &g.images[h]);
            }
            if gen.target == x {
                let t = a.mul(&f.images[h], &sigma);
                d = d.into_iter().zip(t).map(|(p, q)| p - &q).collect();
            }
            col.extend(d);
        }
        cols.push(col);
    }
    let rows = cat.generators().len() * a.dim();
    let kernel = if cols.is_empty() { Subspace::zero(0) } else { Matrix::from_columns(rows, &cols).kernel() };
    let basis: Vec<Vec<Vec<Q>>> = kernel
        .basis()
        .iter()
        .map(|v| {
            let mut comps = vec![vec![Q::zero(); a.dim()]; objects];
            for (&(x, i), c) in unknowns.iter().zip(v) {
                comps[x][i] = c.clone();
            }
            comps
        })
        .collect();
    // Each End(P_v) is local with top spanned by e_v; a generic solution is
    // invertible as soon as no component's top coefficient vanishes on all
    // of the solution space.
    let invertible_exists = !basis.is_empty()
        && (0..objects).all(|x| {
            let e = a.idempotent(f.vertex[x]);
            basis.iter().any(|s| !s[x][e].is_zero())
        });
    Ok(NaturalTransformations { dim: basis.len(), invertible_exists, basis })
}

/// Linear maps on all Hom spaces of a catalog into those of another, with
/// an object map.
#[derive(Clone, Debug)]
pub struct HomTransformation {
    pub object_map: Vec<usize>,
    /// `maps[x][y]: Hom(x, y) → Hom(φx, φy)` in catalog coordinates
    pub maps: Vec<Vec<Matrix<Q>>>,
}

impl HomTransformation {
    pub fn identity(catalog: &Catalog) -> HomTransformation {
        let k = catalog.len();
        HomTransformation {
            object_map: (0..k).collect(),
            maps: (0..k).map(|x| (0..k).map(|y| Matrix::identity(catalog.hom(x, y).dim())).collect()).collect(),
        }
    }

    pub fn is_faithful(&self) -> bool {
        self.maps.iter().flatten().all(|m| m.rank() == m.cols())
    }
}

/// Componentwise preimage `Θ⁻¹I` of an ideal of the target.
pub fn pullback_ideal(source: &Catalog, theta: &HomTransformation, ideal: &IdealFamily) -> IdealFamily {
    let mut out = IdealFamily::zero(source);
    for x in 0..source.len() {
        for y in 0..source.len() {
            let (fx, fy) = (theta.object_map[x], theta.object_map[y]);
            out.components[x][y] = Subspace::preimage(&theta.maps[x][y], &ideal.components[fx][fy]);
        }
    }
    out
}

/// Whether an ideal is stable in a system.
pub fn is_stable(system: &IdealSystem, ideal: &IdealFamily) -> bool {
    system.find_violation(ideal).is_none()
}

/// The comparison `A_n`-proj → `A_r`-proj along a partition, on the Hom
/// spaces of two module catalogs.
pub fn comparison_on_homs(
    source: &Catalog,
    an: &FiniteDimAlgebra,
    target: &Catalog,
    ar: &FiniteDimAlgebra,
    p: &SetPartition,
) -> Result<HomTransformation> {
    let (verts, arrows) = super::block_substitution(p);
    let sub = super::path_substitution(an, ar, &verts, &arrows)?;
    let k = source.len();
    let mut maps = Vec::with_capacity(k);
    for x in 0..k {
        let mut row = Vec::with_capacity(k);
        for y in 0..k {
            let (vx, vy) = (verts[x], verts[y]);
            let cols = source
                .hom(x, y)
                .basis()
                .iter()
                .map(|f| {
                    let u = generator_image(an, x, y, f);
                    let w = sub.mul_vec(&u);
                    let m = right_mul_on(ar, vx, vy, &w);
                    target.hom(vx, vy).coordinates(&m).ok_or_else(|| Error::NotAMorphism("image is not a module map".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            row.push(Matrix::from_columns(target.hom(vx, vy).dim(), &cols));
        }
        maps.push(row);
    }
    Ok(HomTransformation { object_map: verts, maps })
}

/// `f(e_x)` as an element of the algebra, for `f: A e_x → A e_y`.
fn generator_image(a: &FiniteDimAlgebra, x: usize, y: usize, f: &Matrix<Q>) -> Vec<Q> {
    let xs: Vec<usize> = (0..a.dim()).filter(|&i| a.basis()[i].source == x).collect();
    let ys: Vec<usize> = (0..a.dim()).filter(|&i| a.basis()[i].source == y).collect();
    let col = xs.iter().position(|&i| i == a.idempotent(x)).expect("idempotent in its projective");
    let mut u = vec![Q::zero(); a.dim()];
    for (r, &i) in ys.iter().enumerate() {
        u[i] = f[(r, col)].clone();
    }
    u
}

/// `z ↦ z·w` from `A e_x` to `A e_y`.
fn right_mul_on(a: &FiniteDimAlgebra, x: usize, y: usize, w: &[Q]) -> Matrix<Q> {
    let xs: Vec<usize> = (0..a.dim()).filter(|&i| a.basis()[i].source == x).collect();
    let ys: Vec<usize> = (0..a.dim()).filter(|&i| a.basis()[i].source == y).collect();
    let mut m = Matrix::zeros(ys.len(), xs.len());
    for (c, &z) in xs.iter().enumerate() {
        let zw = a.mul(&a.basis_vector(z), w);
        for (r, &i) in ys.iter().enumerate() {
            m[(r, c)] = zw[i].clone();
        }
    }
    m
}

/// The functor between presented colimits for a coarsening `p ≤ q`: the
/// inserted isomorphism between consecutive leaves `i < i'` of a block of
/// `p` goes to the composite of inserted isomorphisms of `q` from `i` to `i'`.
pub fn refinement_transformation(source: &PartitionColimit, target: &PartitionColimit) -> Result<PresentedFunctor> {
    let p = SetPartition::new(source.n, &source.blocks)?;
    let q = SetPartition::new(target.n, &target.blocks)?;
    if !p.is_finer_than(&q) {
        return Err(Error::InvalidInput(format!("{q} does not coarsen {p}")));
    }
    let (sc, tc) = (source.category(), target.category());
    let object_map: Vec<usize> = sc
        .objects()
        .iter()
        .map(|o| tc.object_index(o).ok_or_else(|| Error::InvalidInput(format!("no object {o} in the target"))))
        .collect::<Result<_>>()?;
    let mut declared = Vec::with_capacity(sc.declared_count());
    for gen in &sc.generators()[..sc.declared_count()] {
        let (s, t) = (object_map[gen.source], object_map[gen.target]);
        let img = if let Some(rest) = gen.name.strip_prefix("ξ[") {
            let pair = rest.split(']').next().unwrap_or("");
            let (i, j) = pair
                .split_once(',')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| Error::InvalidInput(format!("cannot read generator {}", gen.name)))?;
            let block = &q.blocks[q.block_of[i]];
            let chain: Vec<usize> = block.iter().copied().filter(|&l| l >= i && l <= j).collect();
            let mut word = Vec::with_capacity(chain.len() - 1);
            for w in chain.windows(2).rev() {
                let name = format!("ξ[{},{}](A)", w[0], w[1]);
                word.push(tc.generator_index(&name).ok_or_else(|| Error::InvalidInput(format!("no generator {name}")))?);
            }
            tc.normal_form(&Morphism::word(s, t, word))?
        } else {
            let g = tc
                .generator_index(&gen.name)
                .ok_or_else(|| Error::InvalidInput(format!("no generator {} in the target", gen.name)))?;
            tc.generator_morphism(g)
        };
        declared.push(img);
    }
    let f = PresentedFunctor::from_declared(sc, tc, object_map, declared)?;
    f.check(sc, tc)?;
    Ok(f)
}

/// Whether two functors agree on every generator of `source`.
pub fn functors_agree(source: &PresentedCategory, target: &PresentedCategory, f: &PresentedFunctor, g: &PresentedFunctor) -> Result<bool> {
    if f.object_map != g.object_map {
        return Ok(false);
    }
    for h in 0..source.generators().len() {
        if !target.equal(&f.images[h], &g.images[h])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks `Ω̃ ∘ Ω(p) = Ω(q)` on the generators of the common base.
pub fn refinement_respects_cones(source: &PartitionColimit, target: &PartitionColimit, f: &PresentedFunctor) -> Result<bool> {
    let via = source.cone.then(f, target.category())?;
    functors_agree(&source.base, target.category(), &via, &target.cone)
}

/// An automorphism of a path algebra given by permutations of vertices and
/// arrows.
#[derive(Clone, Debug)]
pub struct QuiverAutomorphism {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl QuiverAutomorphism {
    /// Swaps two vertices together with the arrows named `{x}{i}`, `{x}{j}`.
    pub fn swap(a: &FiniteDimAlgebra, i: usize, j: usize) -> QuiverAutomorphism {
        let mut vertices: Vec<usize> = (0..a.vertex_count()).collect();
        vertices.swap(i, j);
        let labels: Vec<String> = a.quiver().arrows().iter().map(|x| x.label.clone()).collect();
        let arrows = labels
            .iter()
            .map(|l| {
                let (head, num) = l.split_at(l.find(|c: char| c.is_ascii_digit()).unwrap_or(l.len()));
                let swapped = match num.parse::<usize>() {
                    Ok(x) if x == i => format!("{head}{j}"),
                    Ok(x) if x == j => format!("{head}{i}"),
                    _ => l.clone(),
                };
                labels.iter().position(|m| *m == swapped).unwrap_or_else(|| labels.iter().position(|m| m == l).unwrap())
            })
            .collect();
        QuiverAutomorphism { vertices, arrows }
    }

    pub fn identity(a: &FiniteDimAlgebra) -> QuiverAutomorphism {
        QuiverAutomorphism { vertices: (0..a.vertex_count()).collect(), arrows: (0..a.quiver().arrows().len()).collect() }
    }
}

/// Outcome of the naturality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NaturalityVerdict {
    Passes,
    /// `ψ(u·x) ≠ u·ψ(x)`
    Fails { element: String, multiplier: String, along_top: String, along_bottom: String },
}

/// Tests whether `ψ: f_0 B f_i → f_0 B f_j` commutes with left
/// multiplication by every element of `f_0 B f_0`, i.e. whether it can be
/// the component at `f_0 B` of a natural transformation
/// `− ⊗ B f_i → − ⊗ B f_j` on `add{f_0 B}`.
pub fn naturality_counterexample(a: &FiniteDimAlgebra, psi: &QuiverAutomorphism, i: usize) -> Result<NaturalityVerdict> {
    let m = super::path_substitution(a, a, &psi.vertices, &psi.arrows)?;
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let xy = a.mul(&a.basis_vector(x), &a.basis_vector(y));
            if m.mul_vec(&xy) != a.mul(&m.mul_vec(&a.basis_vector(x)), &m.mul_vec(&a.basis_vector(y))) {
                return Err(Error::InvalidInput("the substitution is not multiplicative".into()));
            }
        }
    }
    if psi.vertices[0] != 0 {
        return Err(Error::InvalidInput("the automorphism must fix vertex 0".into()));
    }
    let mut elements = a.peirce_indices(0, i);
    elements.sort_by_key(|&e| (a.basis()[e].len(), a.basis()[e].name.clone()));
    let mut multipliers = a.peirce_indices(0, 0);
    multipliers.sort_by_key(|&e| (a.basis()[e].len(), a.basis()[e].name.clone()));
    for &x in &elements {
        for &u in &multipliers {
            let ux = a.mul(&a.basis_vector(u), &a.basis_vector(x));
            let top = m.mul_vec(&ux);
            let bottom = a.mul(&a.basis_vector(u), &m.mul_vec(&a.basis_vector(x)));
            if top != bottom {
                return Ok(NaturalityVerdict::Fails {
                    element: a.basis()[x].name.clone(),
                    multiplier: a.basis()[u].name.clone(),
                    along_top: a.format_element(&top),
                    along_bottom: a.format_element(&bottom),
                });
            }
        }
    }
    Ok(NaturalityVerdict::Passes)
}

/// The presented projectives of `A_n`, shared by the functor tests.
pub fn projectives(n: usize, cap: usize) -> Result<PresentedCategory> {
    indecomposable_projectives(n, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicategory::module_catalog;
    use crate::presented::star::partition_colimit;
    use crate::presented::DEFAULT_LENGTH_CAP;
    use crate::quiver::{algebra_from_presentation, AlgebraPresentation};

    fn ones(n: usize) -> Vec<Q> {
        vec![Q::one(); n]
    }

    #[test]
    fn identity_functor_has_chi_one() {
        let cat = projectives(2, DEFAULT_LENGTH_CAP).unwrap();
        let p = SetPartition::discrete(2);
        let f = scaled_functor(&cat, &p, &ones(2), &ones(2), &Q::one()).unwrap();
        assert_eq!(chi_invariant(&cat, &f).unwrap(), Q::one());
    }

    #[test]
    fn scaling_arrows_scales_chi() {
        let cat = projectives(2, DEFAULT_LENGTH_CAP).unwrap();
        let p = SetPartition::new(2, &[vec![0], vec![1, 2]]).unwrap();
        let two = vec![Q::new(2, 1); 2];
        let f = scaled_functor(&cat, &p, &two, &ones(2), &Q::new(2, 1)).unwrap();
        assert_eq!(chi_invariant(&cat, &f).unwrap(), Q::new(2, 1));
        // λ_i μ_i must equal χ
        assert!(scaled_functor(&cat, &p, &two, &ones(2), &Q::one()).is_err());
    }

    #[test]
    fn distinct_chi_means_no_isomorphism() {
        let cat = projectives(1, DEFAULT_LENGTH_CAP).unwrap();
        let p = SetPartition::discrete(1);
        let f = scaled_functor(&cat, &p, &[Q::new(2, 1)], &ones(1), &Q::new(2, 1)).unwrap();
        let g = scaled_functor(&cat, &p, &ones(1), &ones(1), &Q::one()).unwrap();
        assert!(!natural_transformations(&cat, &f, &g).unwrap().invertible_exists);
        let h = scaled_functor(&cat, &p, &ones(1), &[Q::new(2, 1)], &Q::new(2, 1)).unwrap();
        let nt = natural_transformations(&cat, &f, &h).unwrap();
        assert!(nt.invertible_exists);
    }

    #[test]
    fn pullback_along_comparison() {
        let p = SetPartition::new(2, &[vec![0], vec![1, 2]]).unwrap();
        let (an, ar) = (Arc::new(build_star_quotient(2).unwrap()), Arc::new(build_star_quotient(1).unwrap()));
        let (cn, cr) = (module_catalog(&an).unwrap(), module_catalog(&ar).unwrap());
        let theta = comparison_on_homs(&cn, &an, &cr, &ar, &p).unwrap();
        assert!(theta.is_faithful());
        assert!(pullback_ideal(&cn, &theta, &IdealFamily::zero(&cr)).is_zero());
        assert_eq!(pullback_ideal(&cn, &theta, &IdealFamily::full(&cr)), IdealFamily::full(&cn));
        let id = HomTransformation::identity(&cn);
        assert!(pullback_ideal(&cn, &id, &IdealFamily::zero(&cn)).is_zero());
    }

    #[test]
    fn refinement_composes() {
        let parts = [vec![vec![0], vec![1], vec![2], vec![3]], vec![vec![0], vec![1, 2], vec![3]], vec![vec![0], vec![1, 2, 3]]];
        let cs: Vec<PartitionColimit> = parts.iter().map(|b| partition_colimit(3, b, DEFAULT_LENGTH_CAP).unwrap()).collect();
        let f01 = refinement_transformation(&cs[0], &cs[1]).unwrap();
        let f12 = refinement_transformation(&cs[1], &cs[2]).unwrap();
        let f02 = refinement_transformation(&cs[0], &cs[2]).unwrap();
        let comp = f01.then(&f12, cs[2].category()).unwrap();
        assert!(functors_agree(cs[0].category(), cs[2].category(), &comp, &f02).unwrap());
        assert!(refinement_respects_cones(&cs[1], &cs[2], &f12).unwrap());
        let same = refinement_transformation(&cs[1], &cs[1]).unwrap();
        assert!(functors_agree(cs[1].category(), cs[1].category(), &same, &PresentedFunctor::identity(cs[1].category())).unwrap());
        assert!(refinement_transformation(&cs[2], &cs[1]).is_err());
    }

    #[test]
    fn swap_on_b_is_not_natural() {
        let b = algebra_from_presentation(&AlgebraPresentation::three_vertex_radical_four().unwrap()).unwrap();
        let psi = QuiverAutomorphism::swap(&b, 1, 2);
        match naturality_counterexample(&b, &psi, 1).unwrap() {
            NaturalityVerdict::Fails { element, along_top, along_bottom, .. } => {
                assert_eq!(element, "b1");
                assert_eq!((along_top.as_str(), along_bottom.as_str()), ("b2a2b2", "b1a1b2"));
            }
            v => panic!("{v:?}"),
        }
        assert_eq!(naturality_counterexample(&b, &QuiverAutomorphism::identity(&b), 1).unwrap(), NaturalityVerdict::Passes);
    }

    #[test]
    fn leaf_swaps_on_star_algebras_are_natural() {
        for n in 1..=3 {
            let a = build_star_quotient(n).unwrap();
            for i in 1..=n {
                for j in 1..=n {
                    let psi = QuiverAutomorphism::swap(&a, i, j);
                    assert_eq!(naturality_counterexample(&a, &psi, i).unwrap(), NaturalityVerdict::Passes, "{n} {i} {j}");
                }
            }
        }
    }
}
