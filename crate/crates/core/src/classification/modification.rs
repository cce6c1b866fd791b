//! Modifications between the transformations `− ⊗ A e_j` restricted to the
//! subbirepresentation on `add{F_0, …, F_n}`, and their images over `A_r`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{build_cwr_model, path_substitution, block_substitution, SetPartition};
use crate::bicategory::{ActionModel, Birepresentation};
use crate::bimodule::{apply_sparse, column_of, identity_columns, tensor_morphism_sparse, Bimodule, SparseColumns};
use crate::error::{Error, Result};
use crate::linalg::{sparsify, Field, Matrix, SparseVec, Q};
use crate::quiver::FiniteDimAlgebra;

/// One linear map per object of the model, each on the full basis of the
/// object.
#[derive(Clone, Debug, PartialEq)]
pub struct Modification {
    pub label: String,
    pub components: Vec<Matrix<Q>>,
}

impl Modification {
    pub fn scale(&self, s: &Q) -> Modification {
        Modification { label: format!("{s}·{}", self.label), components: self.components.iter().map(|c| c.scale(s)).collect() }
    }

    /// The same modification with the component at `object` multiplied by `s`.
    pub fn perturbed(&self, object: usize, s: &Q) -> Modification {
        let mut m = self.clone();
        m.components[object] = m.components[object].scale(s);
        m.label = format!("{} with component {object} scaled by {s}", self.label);
        m
    }

    /// Whether every component is invertible as a map from the `j`-part to
    /// the `k`-part, given as index sets per object.
    pub fn is_invertible_between(&self, from: &[Vec<usize>], to: &[Vec<usize>]) -> bool {
        self.components.iter().enumerate().all(|(x, c)| {
            if from[x].len() != to[x].len() {
                return false;
            }
            let rows: Vec<Vec<Q>> = to[x].iter().map(|&r| from[x].iter().map(|&col| c[(r, col)].clone()).collect()).collect();
            from[x].is_empty() || Matrix::from_rows(rows).inverse().is_some()
        })
    }
}

fn arrow(a: &FiniteDimAlgebra, label: &str) -> Result<SparseVec<Q>> {
    Ok(sparsify(&a.element_by_labels(&[label])?))
}

/// Basis indices of `X e_j`.
pub fn right_part(x: &Bimodule, j: usize) -> Vec<usize> {
    (0..x.dim()).filter(|&i| x.peirce()[i].1 == j).collect()
}

/// `(·a_k)⁻¹ ∘ (·a_j)` on `X e_j`, extended by zero.
fn transport(x: &Bimodule, a: &FiniteDimAlgebra, j: usize, k: usize) -> Result<Matrix<Q>> {
    let (aj, ak) = (arrow(a, &format!("a{j}"))?, arrow(a, &format!("a{k}"))?);
    let (from, to) = (right_part(x, j), right_part(x, k));
    let unit = |i: usize| -> SparseVec<Q> { vec![(i, Q::one())] };
    let dense = |v: SparseVec<Q>| crate::linalg::densify(&v, x.dim());
    let ak_cols: Vec<Vec<Q>> = to.iter().map(|&u| dense(x.right_apply(&unit(u), &ak))).collect();
    let label = || x.label().unwrap_or("?").to_string();
    if to.is_empty() {
        return Err(Error::NotInvertible(format!("·a{k} on {} has empty source", label())));
    }
    let ak_mat = Matrix::from_columns(x.dim(), &ak_cols);
    if ak_mat.rank() != to.len() {
        return Err(Error::NotInvertible(format!("·a{k} on {} is not injective", label())));
    }
    let mut out = Matrix::zeros(x.dim(), x.dim());
    for &v in &from {
        let w = dense(x.right_apply(&unit(v), &aj));
        let z = ak_mat
            .solve(&w)
            .ok_or_else(|| Error::NotInvertible(format!("image of ·a{j} on {} is outside that of ·a{k}", label())))?;
        for (&u, c) in to.iter().zip(z) {
            out[(u, v)] = c;
        }
    }
    if from.len() != to.len() {
        return Err(Error::NotInvertible(format!("·a{j} on {} is not invertible", label())));
    }
    Ok(out)
}

/// The modification `s_{j,k}` on a model whose objects are the `F_p`.
pub fn build_s_modification(n_model: &ActionModel, j: usize, k: usize) -> Result<Modification> {
    let objects = n_model.catalog().objects();
    let a = objects[0].right_algebra().clone();
    let n = a.vertex_count() - 1;
    if j == 0 || k == 0 || j > n || k > n {
        return Err(Error::InvalidInput(format!("leaf indices must lie in [1,{n}]")));
    }
    let components = objects.iter().map(|x| transport(x, &a, j, k)).collect::<Result<Vec<_>>>()?;
    Ok(Modification { label: format!("s_{{{j},{k}}}"), components })
}

/// Which square of a modification failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Square {
    /// `G ⊗ m_X` against `m_{G X}` through the decomposition of `G ⊗ X`
    Action { generator: String, object: String },
    /// `m_Y ∘ f` against `f ∘ m_X` for a basis morphism `f: X → Y`
    Naturality { source: String, target: String, basis: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModificationCheck {
    pub squares: usize,
    pub failure: Option<Square>,
}

impl ModificationCheck {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

fn sparse_cols(m: &Matrix<Q>) -> SparseColumns {
    (0..m.cols()).map(|j| column_of(m, j)).collect()
}

/// `G ⊗ m_X − ι (⊕_t m_{X_t}) π` on `G ⊗ X`.
fn action_defect(model: &ActionModel, comps: &[SparseColumns], g: usize, x: usize) -> SparseColumns {
    let prod = model.product(g, x);
    let d = prod.tensor.bimodule().dim();
    let lhs = tensor_morphism_sparse(&identity_columns(model.generator(g).dim()), &comps[x], &prod.tensor, &prod.tensor);
    let dec = &prod.decomposition;
    (0..d)
        .map(|v| {
            let pv = apply_sparse(&dec.projection, &vec![(v, Q::one())]);
            let mut mapped: SparseVec<Q> = Vec::new();
            for (t, &s) in dec.summands.iter().enumerate() {
                let (lo, hi) = (dec.offsets[t], dec.offsets[t] + dec.sizes[t]);
                let local: SparseVec<Q> = pv.iter().filter(|(i, _)| *i >= lo && *i < hi).map(|(i, c)| (i - lo, c.clone())).collect();
                if local.is_empty() {
                    continue;
                }
                mapped.extend(apply_sparse(&comps[s], &local).into_iter().map(|(i, c)| (i + lo, c)));
            }
            mapped.sort_by_key(|p| p.0);
            let rhs = apply_sparse(&dec.inclusion, &mapped);
            subtract(&lhs[v], &rhs)
        })
        .collect()
}

fn subtract(a: &SparseVec<Q>, b: &SparseVec<Q>) -> SparseVec<Q> {
    let mut acc: BTreeMap<usize, Q> = a.iter().cloned().collect();
    for (i, x) in b {
        let e = acc.entry(*i).or_insert_with(Q::zero);
        *e = e.clone() - x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

fn naturality_defect(comps: &[Matrix<Q>], x: usize, y: usize, f: &Matrix<Q>) -> Matrix<Q> {
    comps[y].mul(f).sub(&f.mul(&comps[x]))
}

/// Checks every action square over generator/object pairs, then naturality
/// against a basis of every Hom space.
pub fn check_modification_axiom(model: &ActionModel, m: &Modification) -> ModificationCheck {
    let cat = model.catalog();
    let comps: Vec<SparseColumns> = m.components.iter().map(sparse_cols).collect();
    let mut squares = 0;
    for g in 0..model.generator_count() {
        for x in 0..cat.len() {
            squares += 1;
            if action_defect(model, &comps, g, x).iter().any(|c| !c.is_empty()) {
                return ModificationCheck {
                    squares,
                    failure: Some(Square::Action {
                        generator: model.generator_label(g).to_string(),
                        object: cat.labels()[x].clone(),
                    }),
                };
            }
        }
    }
    for x in 0..cat.len() {
        for y in 0..cat.len() {
            for (b, f) in cat.hom(x, y).basis().iter().enumerate() {
                squares += 1;
                if !naturality_defect(&m.components, x, y, f).is_zero() {
                    return ModificationCheck {
                        squares,
                        failure: Some(Square::Naturality {
                            source: cat.labels()[x].clone(),
                            target: cat.labels()[y].clone(),
                            basis: b,
                        }),
                    };
                }
            }
        }
    }
    ModificationCheck { squares, failure: None }
}

/// A basis of all families of left module maps `X e_j → X e_k` that pass
/// [`check_modification_axiom`].
pub fn modification_space(model: &ActionModel, j: usize, k: usize) -> Result<Vec<Modification>> {
    let cat = model.catalog();
    let objects = cat.objects();
    let mut unknowns: Vec<(usize, usize, usize)> = Vec::new();
    for (x, obj) in objects.iter().enumerate() {
        for &col in &right_part(obj, j) {
            for &row in &right_part(obj, k) {
                unknowns.push((x, row, col));
            }
        }
    }
    let zero: Vec<Matrix<Q>> = objects.iter().map(|o| Matrix::zeros(o.dim(), o.dim())).collect();
    let left_gens: Vec<Vec<Matrix<Q>>> = objects
        .iter()
        .map(|o| (0..o.left_algebra().generator_count()).map(|g| o.left_generator_matrix(g)).collect())
        .collect();
    let mut rows: BTreeMap<(usize, usize, usize, usize), usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, Q)>> = Vec::with_capacity(unknowns.len());
    for &(x, row, col) in &unknowns {
        let mut comps = zero.clone();
        comps[x][(row, col)] = Q::one();
        let mut entries: Vec<((usize, usize, usize, usize), Q)> = Vec::new();
        for (g, l) in left_gens[x].iter().enumerate() {
            let d = comps[x].mul(l).sub(&l.mul(&comps[x]));
            push_entries(&mut entries, (0, x, g), &d);
        }
        for y in 0..cat.len() {
            for (b, f) in cat.hom(x, y).basis().iter().enumerate() {
                push_entries(&mut entries, (1, x * cat.len() + y, b), &naturality_defect(&comps, x, y, f));
            }
            for (b, f) in cat.hom(y, x).basis().iter().enumerate() {
                push_entries(&mut entries, (1, y * cat.len() + x, b), &naturality_defect(&comps, y, x, f));
            }
        }
        let sparse: Vec<SparseColumns> = comps.iter().map(sparse_cols).collect();
        for g in 0..model.generator_count() {
            for z in 0..cat.len() {
                let defect = action_defect(model, &sparse, g, z);
                for (c, col) in defect.iter().enumerate() {
                    for (r, v) in col {
                        entries.push(((2, g * cat.len() + z, c, *r), v.clone()));
                    }
                }
            }
        }
        let mut column = Vec::with_capacity(entries.len());
        for (key, v) in entries {
            let n = rows.len();
            let idx = *rows.entry(key).or_insert(n);
            column.push((idx, v));
        }
        columns.push(column);
    }
    let mut mat: Matrix<Q> = Matrix::zeros(rows.len(), unknowns.len());
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col {
            mat[(r, c)] = mat[(r, c)].clone() + &v;
        }
    }
    let kernel = mat.kernel();
    Ok(kernel
        .basis()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut comps = zero.clone();
            for (&(x, row, col), c) in unknowns.iter().zip(v) {
                comps[x][(row, col)] = c.clone();
            }
            Modification { label: format!("m{i}"), components: comps }
        })
        .collect())
}

fn push_entries(entries: &mut Vec<((usize, usize, usize, usize), Q)>, tag: (usize, usize, usize), d: &Matrix<Q>) {
    for r in 0..d.rows() {
        for c in 0..d.cols() {
            let v = &d[(r, c)];
            if !v.is_zero() {
                entries.push(((tag.0, tag.1, tag.2, r * d.cols() + c), v.clone()));
            }
        }
    }
}

/// The unique `λ` with `m' = λ·m`, read off the first component and checked
/// on all of them.
pub fn scalar_proportionality(m: &Modification, m2: &Modification) -> Result<Q> {
    if m.components.len() != m2.components.len() {
        return Err(Error::DimensionMismatch { expected: m.components.len(), found: m2.components.len() });
    }
    let first = &m.components[0];
    let pos = first
        .entries()
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::NotInvertible(format!("{} vanishes on the first object", m.label)))?;
    let lambda = m2.components[0].entries()[pos].clone() / &first.entries()[pos];
    for (x, (a, b)) in m.components.iter().zip(&m2.components).enumerate() {
        if a.scale(&lambda) != *b {
            return Err(Error::Certification(format!(
                "{} is not {lambda}·{} on object {x}",
                m2.label, m.label
            )));
        }
    }
    Ok(lambda)
}

/// `(1/λ)·t'` where `t' = λ·s`.
pub fn normalize_modification(t: &Modification, s: &Modification) -> Result<Modification> {
    let lambda = scalar_proportionality(s, t)?;
    if lambda.is_zero() {
        return Err(Error::NotInvertible(format!("{} is zero", t.label)));
    }
    let mut out = t.scale(&(Q::one() / &lambda));
    out.label = format!("normalized {}", t.label);
    Ok(out)
}

/// `u ∈ e_p A e_p` with `m(e_p ⊗ b_j) = u ⊗ b_k`: the component at `F_p` as
/// an endomorphism of `A e_p`.
fn component_element(x: &Bimodule, m: &Matrix<Q>, j: usize, k: usize) -> Result<Vec<Q>> {
    let a = x.left_algebra();
    let p = match x.origin() {
        crate::bimodule::Origin::Projective(p, _) => p,
        _ => return Err(Error::InvalidInput("expected a projective bimodule".into())),
    };
    let names = x.basis_names();
    let ep = a.basis()[a.idempotent(p)].name.clone();
    let src = names
        .iter()
        .position(|s| *s == format!("{ep}⊗b{j}"))
        .ok_or_else(|| Error::InvalidInput(format!("no basis element {ep}⊗b{j}")))?;
    let mut u = vec![Q::zero(); a.dim()];
    for r in 0..x.dim() {
        let c = &m[(r, src)];
        if c.is_zero() {
            continue;
        }
        let (left, right) = names[r].split_once('⊗').expect("tensor basis names");
        if right != format!("b{k}") {
            return Err(Error::Certification(format!("component leaves the b{k} part: {}", names[r])));
        }
        let i = a.basis_index(left).expect("left basis name");
        u[i] = u[i].clone() + c;
    }
    Ok(u)
}

/// `x ↦ x·u` on `P_v` of a module catalog over `R`.
fn right_multiplication(model: &Birepresentation, v: usize, u: &[Q]) -> Matrix<Q> {
    let r = &model.algebra;
    let obj = model.model.catalog().object(v);
    let xs: Vec<usize> = (0..r.dim()).filter(|&x| r.basis()[x].source == v).collect();
    let pos: BTreeMap<usize, usize> = xs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut m = Matrix::zeros(obj.dim(), obj.dim());
    for (col, &x) in xs.iter().enumerate() {
        let xu = r.mul(&r.basis_vector(x), u);
        for (i, c) in xu.into_iter().enumerate() {
            if !c.is_zero() {
                m[(pos[&i], col)] = c;
            }
        }
    }
    m
}

/// `Σ ∙ m` for a modification of the subbirepresentation: every component,
/// read as an endomorphism of `A_n e_p`, is carried to `A_r e_{𝔓(p)}` along
/// the comparison functor.
pub fn whisker_along_partition(
    n_model: &ActionModel,
    m: &Modification,
    j: usize,
    k: usize,
    p: &SetPartition,
) -> Result<(Birepresentation, Modification)> {
    let model = build_cwr_model(p)?;
    let an = n_model.catalog().object(0).left_algebra().clone();
    let (verts, arrows) = block_substitution(p);
    let sub = path_substitution(&an, &model.algebra, &verts, &arrows)?;
    let mut comps = Vec::with_capacity(m.components.len());
    for (q, (x, c)) in n_model.catalog().objects().iter().zip(&m.components).enumerate() {
        let u = component_element(x, c, j, k)?;
        comps.push(right_multiplication(&model, p.block_of[q], &sub.mul_vec(&u)));
    }
    Ok((model, Modification { label: format!("Σ∙{}", m.label), components: comps }))
}

/// The modification `F_q ↦ F_q(τ)` obtained from an endomorphism `τ` of
/// `A_r e_{𝔓(j)}` by letting the generators `F_0, …, F_n` act on it.
pub fn extend_from_regular(model: &Birepresentation, p: &SetPartition, j: usize, tau: &[Q]) -> Result<Modification> {
    let v = p.block_of[j];
    let cat = model.model.catalog();
    let f = right_multiplication(model, v, tau);
    let coords = cat
        .hom(v, v)
        .coordinates(&f)
        .ok_or_else(|| Error::NotAMorphism("τ is not an endomorphism".into()))?;
    let mut comps = Vec::with_capacity(p.n + 1);
    for q in 0..=p.n {
        let img = model.model.act(1 + q, v, v, &coords);
        if img.cols.len() != 1 || img.rows.len() != 1 {
            return Err(Error::Certification(format!("F_{q} applied to P{v} is not indecomposable")));
        }
        comps.push(cat.hom(img.cols[0], img.rows[0]).combine(&img.blocks[0][0]));
    }
    Ok(Modification { label: format!("t'_{j}"), components: comps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicategory::{subrep_n, StarBicategory, StarKind};

    fn n_model(n: usize) -> ActionModel {
        subrep_n(&StarBicategory::new(n, StarKind::Quotient).unwrap()).unwrap()
    }

    #[test]
    fn s12_moves_b1_to_b2() {
        let nm = n_model(2);
        let s = build_s_modification(&nm, 1, 2).unwrap();
        let f0 = nm.catalog().object(0);
        let names = f0.basis_names();
        for (v, name) in names.iter().enumerate() {
            let col = s.components[0].column(v);
            match name.strip_suffix("⊗b1") {
                Some(x) => {
                    let target = names.iter().position(|t| *t == format!("{x}⊗b2")).unwrap();
                    let mut expected = vec![Q::zero(); names.len()];
                    expected[target] = Q::one();
                    assert_eq!(col, expected, "{name}");
                }
                None => assert!(col.iter().all(|c| c.is_zero()), "{name}"),
            }
        }
    }

    #[test]
    fn s_jj_is_the_identity_on_the_j_part() {
        let nm = n_model(2);
        let s = build_s_modification(&nm, 2, 2).unwrap();
        for (x, c) in s.components.iter().enumerate() {
            let part = right_part(nm.catalog().object(x), 2);
            for i in 0..c.rows() {
                for l in 0..c.cols() {
                    let want = if i == l && part.contains(&i) { Q::one() } else { Q::zero() };
                    assert_eq!(c[(i, l)], want);
                }
            }
        }
    }

    #[test]
    fn axiom_holds_and_perturbation_fails() {
        let nm = n_model(2);
        for j in 1..=2 {
            for k in 1..=2 {
                let s = build_s_modification(&nm, j, k).unwrap();
                assert!(check_modification_axiom(&nm, &s).holds());
                for x in 0..3 {
                    let bad = s.perturbed(x, &Q::new(2, 1));
                    let check = check_modification_axiom(&nm, &bad);
                    assert!(matches!(check.failure, Some(Square::Action { .. })), "{j} {k} {x}");
                }
            }
        }
    }

    #[test]
    fn modifications_form_a_line() {
        let nm = n_model(2);
        let space = modification_space(&nm, 1, 2).unwrap();
        assert_eq!(space.len(), 1);
        let s = build_s_modification(&nm, 1, 2).unwrap();
        assert!(!scalar_proportionality(&s, &space[0]).unwrap().is_zero());
    }

    #[test]
    fn proportionality_and_normalization() {
        let nm = n_model(1);
        let s = build_s_modification(&nm, 1, 1).unwrap();
        assert_eq!(scalar_proportionality(&s, &s.scale(&Q::new(3, 1))).unwrap(), Q::new(3, 1));
        assert!(scalar_proportionality(&s, &s.perturbed(1, &Q::new(2, 1))).is_err());
        assert_eq!(normalize_modification(&s.scale(&Q::new(5, 1)), &s).unwrap().components, s.components);
        assert_eq!(normalize_modification(&s, &s).unwrap().components, s.components);
    }

    #[test]
    fn cell_components_are_identities() {
        let nm = n_model(2);
        let s = build_s_modification(&nm, 1, 2).unwrap();
        let (model, w) = whisker_along_partition(&nm, &s, 1, 2, &SetPartition::discrete(2)).unwrap();
        for (q, c) in w.components.iter().enumerate() {
            assert!(c.is_identity(), "{q}");
            assert_eq!(c.rows(), model.model.catalog().object(q).dim());
        }
    }

    #[test]
    fn equified_modification_on_a_merged_block() {
        let nm = n_model(2);
        let p = SetPartition::new(2, &[vec![0], vec![1, 2]]).unwrap();
        let s = build_s_modification(&nm, 1, 2).unwrap();
        let (model, sigma_s) = whisker_along_partition(&nm, &s, 1, 2, &p).unwrap();
        let mut tau = vec![Q::zero(); model.algebra.dim()];
        tau[model.algebra.idempotent(1)] = Q::new(7, 2);
        let t = extend_from_regular(&model, &p, 1, &tau).unwrap();
        assert_eq!(scalar_proportionality(&sigma_s, &t).unwrap(), Q::new(7, 2));
        assert_eq!(normalize_modification(&t, &sigma_s).unwrap().components, sigma_s.components);
    }
}
