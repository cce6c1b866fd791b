//! Bimodules over finite-dimensional path algebras, tensor products over an
//! algebra, Hom spaces and Krull–Schmidt decomposition against a catalog.
//!
//! Every basis vector of a bimodule is Peirce-homogeneous: it is tagged with
//! the pair `(v, w)` such that `e_v·m·e_w = m`. Actions are stored as sparse
//! columns, column `j` being the image of basis vector `j`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{densify, radical_of_span, sparsify, Field, Matrix, SparseEchelon, SparseVec, Subspace, Q};
use crate::quiver::{AlgebraMap, FiniteDimAlgebra};

/// Column `j` is the image of basis vector `j`.
pub type SparseColumns = Vec<SparseVec<Q>>;

fn accumulate(acc: &mut BTreeMap<usize, Q>, i: usize, x: Q) {
    if x.is_zero() {
        return;
    }
    let e = acc.remove(&i).unwrap_or_else(Q::zero) + &x;
    if !e.is_zero() {
        acc.insert(i, e);
    }
}

fn finish(acc: BTreeMap<usize, Q>) -> SparseVec<Q> {
    acc.into_iter().collect()
}

/// `cols · v`
pub fn apply_sparse(cols: &SparseColumns, v: &SparseVec<Q>) -> SparseVec<Q> {
    let mut acc = BTreeMap::new();
    for (j, x) in v {
        for (i, y) in &cols[*j] {
            accumulate(&mut acc, *i, x.clone() * y);
        }
    }
    finish(acc)
}

fn dense_of_columns(rows: usize, cols: &SparseColumns) -> Matrix<Q> {
    let mut m = Matrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c {
            m[(*i, j)] = x.clone();
        }
    }
    m
}

fn sparse_column(m: &Matrix<Q>, j: usize) -> SparseVec<Q> {
    (0..m.rows()).filter(|&i| !m[(i, j)].is_zero()).map(|i| (i, m[(i, j)].clone())).collect()
}

#[derive(Clone, Debug)]
pub struct Bimodule {
    left: Arc<FiniteDimAlgebra>,
    right: Arc<FiniteDimAlgebra>,
    names: Vec<String>,
    peirce: Vec<(usize, usize)>,
    left_action: Vec<SparseColumns>,
    right_action: Vec<SparseColumns>,
    label: Option<String>,
    origin: Origin,
}

/// How a bimodule was built; cyclic maps need the generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Regular,
    /// `L e_i ⊗ e_j R`, generated by `e_i ⊗ e_j`
    Projective(usize, usize),
    Other,
}

impl Bimodule {
    /// Assembles a bimodule from Peirce tags and arrow actions. Idempotents
    /// act through the tags.
    pub fn from_arrow_actions(
        left: Arc<FiniteDimAlgebra>,
        right: Arc<FiniteDimAlgebra>,
        names: Vec<String>,
        peirce: Vec<(usize, usize)>,
        left_arrows: Vec<SparseColumns>,
        right_arrows: Vec<SparseColumns>,
    ) -> Result<Bimodule> {
        let dim = peirce.len();
        if names.len() != dim
            || left_arrows.len() != left.quiver().arrows().len()
            || right_arrows.len() != right.quiver().arrows().len()
            || left_arrows.iter().chain(&right_arrows).any(|c| c.len() != dim)
        {
            return Err(Error::InvalidInput("bimodule data has inconsistent sizes".into()));
        }
        if peirce.iter().any(|&(v, w)| v >= left.vertex_count() || w >= right.vertex_count()) {
            return Err(Error::InvalidInput("Peirce tag out of range".into()));
        }
        let idem = |side: usize, count: usize| -> Vec<SparseColumns> {
            (0..count)
                .map(|v| {
                    peirce
                        .iter()
                        .enumerate()
                        .map(|(j, p)| if [p.0, p.1][side] == v { vec![(j, Q::one())] } else { Vec::new() })
                        .collect()
                })
                .collect()
        };
        let mut left_action = idem(0, left.vertex_count());
        left_action.extend(left_arrows);
        let mut right_action = idem(1, right.vertex_count());
        right_action.extend(right_arrows);
        Ok(Bimodule { left, right, names, peirce, left_action, right_action, label: None, origin: Origin::Other })
    }

    /// `A` as an `A`-`A`-bimodule.
    pub fn regular(a: &Arc<FiniteDimAlgebra>) -> Bimodule {
        let d = a.dim();
        let peirce = a.basis().iter().map(|b| (b.target, b.source)).collect();
        let names = a.basis().iter().map(|b| b.name.clone()).collect();
        let arrows = a.quiver().arrows().len();
        let mut left = Vec::with_capacity(arrows);
        let mut right = Vec::with_capacity(arrows);
        for g in 0..arrows {
            let x = a.arrow_element(g);
            left.push((0..d).map(|j| mul_left(a, x, j)).collect());
            right.push((0..d).map(|j| mul_right(a, j, x)).collect());
        }
        let mut m = Bimodule::from_arrow_actions(a.clone(), a.clone(), names, peirce, left, right)
            .expect("regular bimodule data is consistent")
            .with_label("Reg");
        m.origin = Origin::Regular;
        m
    }

    /// `L e_i ⊗_𝕜 e_j R`.
    pub fn projective(left: &Arc<FiniteDimAlgebra>, i: usize, right: &Arc<FiniteDimAlgebra>, j: usize) -> Result<Bimodule> {
        if i >= left.vertex_count() || j >= right.vertex_count() {
            return Err(Error::InvalidInput("vertex out of range".into()));
        }
        let xs: Vec<usize> = (0..left.dim()).filter(|&x| left.basis()[x].source == i).collect();
        let ys: Vec<usize> = (0..right.dim()).filter(|&y| right.basis()[y].target == j).collect();
        let xpos: BTreeMap<usize, usize> = xs.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let ypos: BTreeMap<usize, usize> = ys.iter().enumerate().map(|(k, &y)| (y, k)).collect();
        let ny = ys.len();
        let mut names = Vec::new();
        let mut peirce = Vec::new();
        for &x in &xs {
            for &y in &ys {
                names.push(format!("{}⊗{}", left.basis()[x].name, right.basis()[y].name));
                peirce.push((left.basis()[x].target, right.basis()[y].source));
            }
        }
        let mut la = Vec::new();
        for g in 0..left.quiver().arrows().len() {
            let a = left.arrow_element(g);
            let mut cols = Vec::new();
            for &x in &xs {
                let ax = mul_left(left, a, x);
                for yk in 0..ny {
                    cols.push(ax.iter().map(|(k, c)| (xpos[k] * ny + yk, c.clone())).collect());
                }
            }
            la.push(cols);
        }
        let mut ra = Vec::new();
        for g in 0..right.quiver().arrows().len() {
            let a = right.arrow_element(g);
            let mut cols = Vec::new();
            for xk in 0..xs.len() {
                for &y in &ys {
                    let ya = mul_right(right, y, a);
                    let mut col: SparseVec<Q> = ya.iter().map(|(k, c)| (xk * ny + ypos[k], c.clone())).collect();
                    col.sort_by_key(|p| p.0);
                    cols.push(col);
                }
            }
            ra.push(cols);
        }
        let label = if Arc::ptr_eq(left, right) && j == 0 { format!("F_{i}") } else { format!("P({i},{j})") };
        let mut m = Bimodule::from_arrow_actions(left.clone(), right.clone(), names, peirce, la, ra)?.with_label(&label);
        m.origin = Origin::Projective(i, j);
        Ok(m)
    }

    /// `⊕_k L e_{φ(k)}` as an `L`-`R`-bimodule, where an arrow `α: s → t` of
    /// `R` acts by right multiplication with `images[α] ∈ e_{φ(t)} L e_{φ(s)}`,
    /// mapping the summand of `t` to the summand of `s`.
    pub fn from_vertex_assignment(
        left: &Arc<FiniteDimAlgebra>,
        right: &Arc<FiniteDimAlgebra>,
        vertex_map: &[usize],
        images: &[SparseVec<Q>],
    ) -> Result<Bimodule> {
        if vertex_map.len() != right.vertex_count() || vertex_map.iter().any(|&v| v >= left.vertex_count()) {
            return Err(Error::InvalidInput("vertex map does not fit the algebras".into()));
        }
        let arrows = right.quiver().arrows();
        if images.len() != arrows.len() {
            return Err(Error::InvalidInput("one image per arrow is required".into()));
        }
        for (a, img) in arrows.iter().zip(images) {
            let ok = img.iter().all(|(k, _)| {
                let b = &left.basis()[*k];
                b.target == vertex_map[a.target] && b.source == vertex_map[a.source]
            });
            if !ok {
                return Err(Error::InvalidInput(format!("image of {} is not in the required Peirce component", a.label)));
            }
        }
        let mut offsets = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut names = Vec::new();
        let mut peirce = Vec::new();
        let mut pos = BTreeMap::new();
        for (k, &v) in vertex_map.iter().enumerate() {
            offsets.push(names.len());
            let xs: Vec<usize> = (0..left.dim()).filter(|&x| left.basis()[x].source == v).collect();
            for &x in &xs {
                pos.insert((k, x), names.len());
                names.push(format!("{}@{k}", left.basis()[x].name));
                peirce.push((left.basis()[x].target, k));
            }
            members.push(xs);
        }
        let dim = names.len();
        let mut la = Vec::new();
        for g in 0..left.quiver().arrows().len() {
            let a = left.arrow_element(g);
            let mut cols = Vec::with_capacity(dim);
            for (k, xs) in members.iter().enumerate() {
                for &x in xs {
                    let mut col: SparseVec<Q> = mul_left(left, a, x).into_iter().map(|(y, c)| (pos[&(k, y)], c)).collect();
                    col.sort_by_key(|p| p.0);
                    cols.push(col);
                }
            }
            la.push(cols);
        }
        let mut ra = Vec::new();
        for (g, a) in arrows.iter().enumerate() {
            let mut cols = Vec::with_capacity(dim);
            for (k, xs) in members.iter().enumerate() {
                for &x in xs {
                    if k != a.target {
                        cols.push(Vec::new());
                        continue;
                    }
                    let mut col: SparseVec<Q> =
                        mul_right(left, x, &images[g]).into_iter().map(|(y, c)| (pos[&(a.source, y)], c)).collect();
                    col.sort_by_key(|p| p.0);
                    cols.push(col);
                }
            }
            ra.push(cols);
        }
        Bimodule::from_arrow_actions(left.clone(), right.clone(), names, peirce, la, ra)
    }

    pub fn direct_sum(parts: &[&Bimodule]) -> Result<Bimodule> {
        let first = parts.first().ok_or_else(|| Error::InvalidInput("empty direct sum".into()))?;
        for p in parts {
            if !Arc::ptr_eq(&p.left, &first.left) || !Arc::ptr_eq(&p.right, &first.right) {
                return Err(Error::AlgebraMismatch("summands over different algebras".into()));
            }
        }
        let mut names = Vec::new();
        let mut peirce = Vec::new();
        let mut offset = 0;
        let mut la = vec![Vec::new(); first.left_action.len()];
        let mut ra = vec![Vec::new(); first.right_action.len()];
        for p in parts {
            names.extend(p.names.iter().cloned());
            peirce.extend(p.peirce.iter().cloned());
            for (g, cols) in p.left_action.iter().enumerate() {
                la[g].extend(cols.iter().map(|c| c.iter().map(|(i, x)| (i + offset, x.clone())).collect::<SparseVec<Q>>()));
            }
            for (g, cols) in p.right_action.iter().enumerate() {
                ra[g].extend(cols.iter().map(|c| c.iter().map(|(i, x)| (i + offset, x.clone())).collect::<SparseVec<Q>>()));
            }
            offset += p.dim();
        }
        let label = parts.iter().map(|p| p.label.clone().unwrap_or_else(|| "?".into())).collect::<Vec<_>>().join("⊕");
        Ok(Bimodule {
            left: first.left.clone(),
            right: first.right.clone(),
            names,
            peirce,
            left_action: la,
            right_action: ra,
            label: Some(label),
            origin: Origin::Other,
        })
    }

    pub fn with_label(mut self, label: &str) -> Bimodule {
        self.label = Some(label.to_string());
        self
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// The same module with the left action pulled back along `φ: B → L`.
    /// `φ` must send each vertex idempotent to a vertex idempotent.
    pub fn restrict_left(&self, phi: &AlgebraMap) -> Result<Bimodule> {
        if !Arc::ptr_eq(&phi.target, &self.left) {
            return Err(Error::AlgebraMismatch("restriction map does not land in the left algebra".into()));
        }
        let vmap = idempotent_map(phi)?;
        let peirce = self
            .peirce
            .iter()
            .map(|&(v, w)| vmap.iter().position(|&x| x == v).map(|b| (b, w)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::AlgebraMismatch("a vertex is missed by the restriction map".into()))?;
        let src = &phi.source;
        let arrows = (0..src.quiver().arrows().len())
            .map(|a| {
                let x = sparsify(&phi.apply(&densify(src.arrow_element(a), src.dim())));
                (0..self.dim()).map(|j| self.left_apply(&x, &vec![(j, Q::one())])).collect()
            })
            .collect();
        let right_arrows = self.right_action[self.right.vertex_count()..].to_vec();
        let mut m = Bimodule::from_arrow_actions(src.clone(), self.right.clone(), self.names.clone(), peirce, arrows, right_arrows)?;
        m.label = self.label.clone();
        Ok(m)
    }

    /// The same module with the right action pulled back along `φ: B → R`.
    pub fn restrict_right(&self, phi: &AlgebraMap) -> Result<Bimodule> {
        if !Arc::ptr_eq(&phi.target, &self.right) {
            return Err(Error::AlgebraMismatch("restriction map does not land in the right algebra".into()));
        }
        let vmap = idempotent_map(phi)?;
        let peirce = self
            .peirce
            .iter()
            .map(|&(v, w)| vmap.iter().position(|&x| x == w).map(|b| (v, b)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::AlgebraMismatch("a vertex is missed by the restriction map".into()))?;
        let src = &phi.source;
        let arrows = (0..src.quiver().arrows().len())
            .map(|a| {
                let x = sparsify(&phi.apply(&densify(src.arrow_element(a), src.dim())));
                (0..self.dim()).map(|j| self.right_apply(&vec![(j, Q::one())], &x)).collect()
            })
            .collect();
        let left_arrows = self.left_action[self.left.vertex_count()..].to_vec();
        let mut m = Bimodule::from_arrow_actions(self.left.clone(), src.clone(), self.names.clone(), peirce, left_arrows, arrows)?;
        m.label = self.label.clone();
        Ok(m)
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.peirce.len()
    }

    pub fn left_algebra(&self) -> &Arc<FiniteDimAlgebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<FiniteDimAlgebra> {
        &self.right
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn peirce(&self) -> &[(usize, usize)] {
        &self.peirce
    }

    /// Action of a left generator (vertices first, then arrows).
    pub fn left_generator(&self, g: usize) -> &SparseColumns {
        &self.left_action[g]
    }

    pub fn right_generator(&self, g: usize) -> &SparseColumns {
        &self.right_action[g]
    }

    pub fn left_generator_matrix(&self, g: usize) -> Matrix<Q> {
        dense_of_columns(self.dim(), &self.left_action[g])
    }

    pub fn right_generator_matrix(&self, g: usize) -> Matrix<Q> {
        dense_of_columns(self.dim(), &self.right_action[g])
    }

    /// `x·v` for a basis element `x` of the left algebra.
    pub fn left_basis_apply(&self, x: usize, v: &SparseVec<Q>) -> SparseVec<Q> {
        let b = &self.left.basis()[x];
        if b.word.is_empty() {
            return apply_sparse(&self.left_action[b.source], v);
        }
        let nv = self.left.vertex_count();
        let mut w = apply_sparse(&self.left_action[b.source], v);
        for &a in b.word.iter().rev() {
            w = apply_sparse(&self.left_action[nv + a], &w);
        }
        w
    }

    /// `v·y` for a basis element `y` of the right algebra.
    pub fn right_basis_apply(&self, v: &SparseVec<Q>, y: usize) -> SparseVec<Q> {
        let b = &self.right.basis()[y];
        let nv = self.right.vertex_count();
        let mut w = apply_sparse(&self.right_action[b.target], v);
        for &a in &b.word {
            w = apply_sparse(&self.right_action[nv + a], &w);
        }
        w
    }

    pub fn left_apply(&self, x: &SparseVec<Q>, v: &SparseVec<Q>) -> SparseVec<Q> {
        let mut acc = BTreeMap::new();
        for (i, c) in x {
            for (k, y) in self.left_basis_apply(*i, v) {
                accumulate(&mut acc, k, y * c);
            }
        }
        finish(acc)
    }

    pub fn right_apply(&self, v: &SparseVec<Q>, x: &SparseVec<Q>) -> SparseVec<Q> {
        let mut acc = BTreeMap::new();
        for (i, c) in x {
            for (k, y) in self.right_basis_apply(v, *i) {
                accumulate(&mut acc, k, y * c);
            }
        }
        finish(acc)
    }

    /// Checks the bimodule axioms on all basis products and generator pairs.
    pub fn check_axioms(&self) -> Result<()> {
        let d = self.dim();
        let unit = |v: usize| vec![(v, Q::one())];
        for v in 0..d {
            let (p, q) = self.peirce[v];
            if self.left_basis_apply(self.left.idempotent(p), &unit(v)) != unit(v)
                || self.right_basis_apply(&unit(v), self.right.idempotent(q)) != unit(v)
            {
                return Err(Error::InvalidInput(format!("basis vector {v} is not Peirce-homogeneous")));
            }
        }
        for (alg, is_left) in [(&self.left, true), (&self.right, false)] {
            let n = alg.dim();
            for i in 0..n {
                for j in 0..n {
                    let prod = alg.mul_basis(i, j);
                    for v in 0..d {
                        let (lhs, rhs) = if is_left {
                            (self.left_basis_apply(i, &self.left_basis_apply(j, &unit(v))), self.left_apply(prod, &unit(v)))
                        } else {
                            (self.right_basis_apply(&self.right_basis_apply(&unit(v), i), j), self.right_apply(&unit(v), prod))
                        };
                        if lhs != rhs {
                            return Err(Error::InvalidInput(format!(
                                "{} action violates the product {}·{}",
                                if is_left { "left" } else { "right" },
                                alg.basis()[i].name,
                                alg.basis()[j].name
                            )));
                        }
                    }
                }
            }
        }
        for l in &self.left_action {
            for r in &self.right_action {
                for v in 0..d {
                    let u = unit(v);
                    if apply_sparse(l, &apply_sparse(r, &u)) != apply_sparse(r, &apply_sparse(l, &u)) {
                        return Err(Error::InvalidInput("left and right actions do not commute".into()));
                    }
                }
            }
        }
        Ok(())
    }

    fn same_algebras(&self, other: &Bimodule) -> bool {
        Arc::ptr_eq(&self.left, &other.left) && Arc::ptr_eq(&self.right, &other.right)
    }

    /// Basis vectors grouped by Peirce tag.
    pub fn peirce_blocks(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut out: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, p) in self.peirce.iter().enumerate() {
            out.entry(*p).or_default().push(i);
        }
        out
    }

    /// Dimensions of `e_v M e_w`, flattened with `w` varying fastest.
    pub fn dimension_vector(&self) -> Vec<usize> {
        let nw = self.right.vertex_count();
        let mut out = vec![0; self.left.vertex_count() * nw];
        for &(v, w) in &self.peirce {
            out[v * nw + w] += 1;
        }
        out
    }
}

/// Vertex images of an algebra map that sends idempotents to idempotents.
fn idempotent_map(phi: &AlgebraMap) -> Result<Vec<usize>> {
    let (s, t) = (&phi.source, &phi.target);
    (0..s.vertex_count())
        .map(|v| {
            let img = sparse_column(&phi.matrix, s.idempotent(v));
            (0..t.vertex_count())
                .find(|&w| img == vec![(t.idempotent(w), Q::one())])
                .ok_or_else(|| Error::AlgebraMismatch(format!("e{v} is not sent to a vertex idempotent")))
        })
        .collect()
}

/// The bimodule map out of a regular or projective bimodule sending its
/// generator (`1`, resp. `e_i ⊗ e_j`) to `u`.
pub fn cyclic_map(source: &Bimodule, target: &Bimodule, u: &SparseVec<Q>) -> Result<SparseColumns> {
    let cols: SparseColumns = match source.origin {
        Origin::Regular => (0..source.dim()).map(|x| target.left_basis_apply(x, u)).collect(),
        Origin::Projective(i, j) => {
            let (l, r) = (&source.left, &source.right);
            let xs: Vec<usize> = (0..l.dim()).filter(|&x| l.basis()[x].source == i).collect();
            let ys: Vec<usize> = (0..r.dim()).filter(|&y| r.basis()[y].target == j).collect();
            let mut cols = Vec::with_capacity(xs.len() * ys.len());
            for &x in &xs {
                for &y in &ys {
                    cols.push(target.left_basis_apply(x, &target.right_basis_apply(u, y)));
                }
            }
            cols
        }
        Origin::Other => return Err(Error::InvalidInput("source is not cyclic".into())),
    };
    if !is_intertwiner(source, target, &dense_of_columns(target.dim(), &cols)) {
        return Err(Error::NotAMorphism("generator image does not define a bimodule map".into()));
    }
    Ok(cols)
}

pub fn identity_columns(dim: usize) -> SparseColumns {
    (0..dim).map(|j| vec![(j, Q::one())]).collect()
}

fn mul_left(a: &FiniteDimAlgebra, x: &SparseVec<Q>, j: usize) -> SparseVec<Q> {
    let mut acc = BTreeMap::new();
    for (i, c) in x {
        for (k, y) in a.mul_basis(*i, j) {
            accumulate(&mut acc, *k, y.clone() * c);
        }
    }
    finish(acc)
}

fn mul_right(a: &FiniteDimAlgebra, j: usize, x: &SparseVec<Q>) -> SparseVec<Q> {
    let mut acc = BTreeMap::new();
    for (i, c) in x {
        for (k, y) in a.mul_basis(j, *i) {
            accumulate(&mut acc, *k, y.clone() * c);
        }
    }
    finish(acc)
}

/// Whether `f: M → N` commutes with both actions.
pub fn is_intertwiner(m: &Bimodule, n: &Bimodule, f: &Matrix<Q>) -> bool {
    if f.rows() != n.dim() || f.cols() != m.dim() || !m.same_algebras(n) {
        return false;
    }
    let fcols: SparseColumns = (0..m.dim()).map(|j| sparse_column(f, j)).collect();
    let pairs = m.left_action.iter().zip(&n.left_action).chain(m.right_action.iter().zip(&n.right_action));
    for (am, an) in pairs {
        for j in 0..m.dim() {
            let lhs = apply_sparse(&fcols, &am[j]);
            let rhs = apply_sparse(an, &fcols[j]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Space of intertwiners `M → N` with its canonical basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source_dim: usize,
    target_dim: usize,
    /// `(row, column)` of each unknown entry
    unknowns: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    space: Subspace<Q>,
    basis: Vec<Matrix<Q>>,
    sparse: Vec<SparseColumns>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<Q>] {
        &self.basis
    }

    pub fn basis_sparse(&self) -> &[SparseColumns] {
        &self.sparse
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn combine(&self, coords: &[Q]) -> Matrix<Q> {
        let mut m = Matrix::zeros(self.target_dim, self.source_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                m.add_scaled(c, b);
            }
        }
        m
    }

    /// Coordinates of an intertwiner in the canonical basis.
    pub fn coordinates(&self, f: &Matrix<Q>) -> Option<Vec<Q>> {
        if f.rows() != self.target_dim || f.cols() != self.source_dim {
            return None;
        }
        let mut seen = 0usize;
        let v: Vec<Q> = self.unknowns.iter().map(|&(r, c)| f[(r, c)].clone()).collect();
        for x in f.entries() {
            if !x.is_zero() {
                seen += 1;
            }
        }
        if v.iter().filter(|x| !x.is_zero()).count() != seen {
            return None;
        }
        self.space.coordinates(&v)
    }

    pub fn coordinates_sparse(&self, f: &SparseColumns) -> Option<Vec<Q>> {
        if f.len() != self.source_dim {
            return None;
        }
        let mut v = vec![Q::zero(); self.unknowns.len()];
        for (c, col) in f.iter().enumerate() {
            for (r, x) in col {
                v[*self.index.get(&(*r, c))?] = x.clone();
            }
        }
        self.space.coordinates(&v)
    }

    pub fn combine_sparse(&self, coords: &[Q]) -> SparseColumns {
        let mut acc: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); self.source_dim];
        for (c, b) in coords.iter().zip(&self.sparse) {
            if c.is_zero() {
                continue;
            }
            for (j, col) in b.iter().enumerate() {
                for (i, x) in col {
                    accumulate(&mut acc[j], *i, x.clone() * c);
                }
            }
        }
        acc.into_iter().map(finish).collect()
    }
}

/// `a ∘ b` for maps stored as sparse columns.
pub fn compose_sparse(a: &SparseColumns, b: &SparseColumns) -> SparseColumns {
    b.iter().map(|col| apply_sparse(a, col)).collect()
}

pub fn hom_space(m: &Bimodule, n: &Bimodule) -> Result<HomSpace> {
    if !m.same_algebras(n) {
        return Err(Error::AlgebraMismatch("Hom between bimodules over different algebras".into()));
    }
    let mblocks = m.peirce_blocks();
    let nblocks = n.peirce_blocks();
    let mut unknowns = Vec::new();
    let mut index = BTreeMap::new();
    for (p, tag) in n.peirce.iter().enumerate() {
        if let Some(qs) = mblocks.get(tag) {
            for &q in qs {
                index.insert((p, q), unknowns.len());
                unknowns.push((p, q));
            }
        }
    }
    let mut ech = SparseEchelon::<Q>::new(unknowns.len());
    let equations = |am: &SparseColumns, an: &SparseColumns, ech: &mut SparseEchelon<Q>| {
        // rows of the target action
        let mut an_rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); n.dim()];
        for (k, col) in an.iter().enumerate() {
            for (p, x) in col {
                an_rows[*p].push((k, x.clone()));
            }
        }
        for q in 0..m.dim() {
            // (X·am − an·X)[p, q] for every p
            let mut rows: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
            for (k, x) in &am[q] {
                for &p in nblocks.get(&m.peirce[*k]).map(Vec::as_slice).unwrap_or(&[]) {
                    accumulate(rows.entry(p).or_default(), index[&(p, *k)], x.clone());
                }
            }
            for (p, row) in an_rows.iter().enumerate() {
                for (k, x) in row {
                    if let Some(&u) = index.get(&(*k, q)) {
                        accumulate(rows.entry(p).or_default(), u, -x.clone());
                    }
                }
            }
            for (_, r) in rows {
                if !r.is_empty() {
                    ech.insert(finish(r));
                }
            }
        }
    };
    let nv = m.left.vertex_count();
    for g in nv..m.left_action.len() {
        equations(&m.left_action[g], &n.left_action[g], &mut ech);
    }
    let nw = m.right.vertex_count();
    for g in nw..m.right_action.len() {
        equations(&m.right_action[g], &n.right_action[g], &mut ech);
    }
    let space = ech.kernel();
    let index = unknowns.iter().enumerate().map(|(k, &rc)| (rc, k)).collect();
    let sparse: Vec<SparseColumns> = space
        .basis()
        .iter()
        .map(|v| {
            let mut cols = vec![Vec::new(); m.dim()];
            for (x, &(r, c)) in v.iter().zip(&unknowns) {
                if !x.is_zero() {
                    cols[c].push((r, x.clone()));
                }
            }
            for col in &mut cols {
                col.sort_by_key(|p| p.0);
            }
            cols
        })
        .collect();
    let basis = space
        .basis()
        .iter()
        .map(|v| {
            let mut f = Matrix::zeros(n.dim(), m.dim());
            for (x, &(r, c)) in v.iter().zip(&unknowns) {
                if !x.is_zero() {
                    f[(r, c)] = x.clone();
                }
            }
            f
        })
        .collect();
    Ok(HomSpace { source_dim: m.dim(), target_dim: n.dim(), unknowns, index, space, basis, sparse })
}

/// `M ⊗_B N` with the data needed to name classes of simple tensors.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    bimodule: Bimodule,
    col_of: BTreeMap<(usize, usize), usize>,
    echelon: SparseEchelon<Q>,
    position: Vec<Option<usize>>,
    representatives: Vec<(usize, usize)>,
}

impl TensorProduct {
    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    pub fn into_bimodule(self) -> Bimodule {
        self.bimodule
    }

    /// The simple tensor `m ⊗ n` whose class is basis vector `i`.
    pub fn representative(&self, i: usize) -> (usize, usize) {
        self.representatives[i]
    }

    pub fn class_of_pair(&self, m: usize, n: usize) -> SparseVec<Q> {
        match self.col_of.get(&(m, n)) {
            Some(&c) => self.project(vec![(c, Q::one())]),
            None => Vec::new(),
        }
    }

    pub fn class_of(&self, m: &SparseVec<Q>, n: &SparseVec<Q>) -> SparseVec<Q> {
        let mut acc = BTreeMap::new();
        for (i, x) in m {
            for (j, y) in n {
                if let Some(&c) = self.col_of.get(&(*i, *j)) {
                    accumulate(&mut acc, c, x.clone() * y);
                }
            }
        }
        self.project(finish(acc))
    }

    fn project(&self, v: SparseVec<Q>) -> SparseVec<Q> {
        let mut out: SparseVec<Q> =
            self.echelon.reduce(v).into_iter().map(|(c, x)| (self.position[c].expect("free column"), x)).collect();
        out.sort_by_key(|p| p.0);
        out
    }
}

pub fn tensor_over(m: &Bimodule, n: &Bimodule) -> Result<TensorProduct> {
    if !Arc::ptr_eq(&m.right, &n.left) {
        return Err(Error::AlgebraMismatch(format!(
            "cannot tensor over {} with a bimodule whose left algebra is {}",
            m.right.name(),
            n.left.name()
        )));
    }
    let mid = &m.right;
    let nblocks_by_left: BTreeMap<usize, Vec<usize>> = {
        let mut b: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (j, p) in n.peirce.iter().enumerate() {
            b.entry(p.0).or_default().push(j);
        }
        b
    };
    let mut pairs = Vec::new();
    let mut col_of = BTreeMap::new();
    for (i, p) in m.peirce.iter().enumerate() {
        if let Some(js) = nblocks_by_left.get(&p.1) {
            for &j in js {
                col_of.insert((i, j), pairs.len());
                pairs.push((i, j));
            }
        }
    }
    let mut ech = SparseEchelon::<Q>::new(pairs.len());
    let nv = mid.vertex_count();
    for (ai, a) in mid.quiver().arrows().iter().enumerate() {
        let rm = &m.right_action[nv + ai];
        let ln = &n.left_action[nv + ai];
        let empty = Vec::new();
        for i in (0..m.dim()).filter(|&i| m.peirce[i].1 == a.target) {
            for &j in nblocks_by_left.get(&a.source).unwrap_or(&empty) {
                let mut acc = BTreeMap::new();
                for (k, x) in &rm[i] {
                    if let Some(&c) = col_of.get(&(*k, j)) {
                        accumulate(&mut acc, c, x.clone());
                    }
                }
                for (k, x) in &ln[j] {
                    if let Some(&c) = col_of.get(&(i, *k)) {
                        accumulate(&mut acc, c, -x.clone());
                    }
                }
                if !acc.is_empty() {
                    ech.insert(finish(acc));
                }
            }
        }
    }
    let free = ech.free_columns();
    let mut position = vec![None; pairs.len()];
    for (k, &c) in free.iter().enumerate() {
        position[c] = Some(k);
    }
    let representatives: Vec<(usize, usize)> = free.iter().map(|&c| pairs[c]).collect();
    let names = representatives.iter().map(|&(i, j)| format!("[{}|{}]", m.names[i], n.names[j])).collect();
    let peirce = representatives.iter().map(|&(i, j)| (m.peirce[i].0, n.peirce[j].1)).collect();
    let mut tp = TensorProduct {
        bimodule: Bimodule {
            left: m.left.clone(),
            right: n.right.clone(),
            names,
            peirce,
            left_action: Vec::new(),
            right_action: Vec::new(),
            label: None,
            origin: Origin::Other,
        },
        col_of,
        echelon: ech,
        position,
        representatives,
    };
    let left_action = m
        .left_action
        .iter()
        .map(|g| tp.representatives.iter().map(|&(i, j)| tp.class_of(&g[i], &vec![(j, Q::one())])).collect())
        .collect();
    let right_action = n
        .right_action
        .iter()
        .map(|g| tp.representatives.iter().map(|&(i, j)| tp.class_of(&vec![(i, Q::one())], &g[j])).collect())
        .collect();
    tp.bimodule.left_action = left_action;
    tp.bimodule.right_action = right_action;
    if let (Some(a), Some(b)) = (m.label(), n.label()) {
        tp.bimodule.label = Some(format!("{a}∘{b}"));
    }
    Ok(tp)
}

/// `f ⊗ g` between two tensor products.
pub fn tensor_morphism(f: &Matrix<Q>, g: &Matrix<Q>, source: &TensorProduct, target: &TensorProduct) -> Matrix<Q> {
    let fc: SparseColumns = (0..f.cols()).map(|j| sparse_column(f, j)).collect();
    let gc: SparseColumns = (0..g.cols()).map(|j| sparse_column(g, j)).collect();
    dense_of_columns(target.bimodule.dim(), &tensor_morphism_sparse(&fc, &gc, source, target))
}

pub fn tensor_morphism_sparse(
    f: &SparseColumns,
    g: &SparseColumns,
    source: &TensorProduct,
    target: &TensorProduct,
) -> SparseColumns {
    source.representatives.iter().map(|&(i, j)| target.class_of(&f[i], &g[j])).collect()
}

/// `(M⊗N)⊗P → M⊗(N⊗P)`.
pub fn associator(mn: &TensorProduct, mn_p: &TensorProduct, np: &TensorProduct, m_np: &TensorProduct) -> Matrix<Q> {
    let cols: SparseColumns = mn_p
        .representatives
        .iter()
        .map(|&(u, p)| {
            let (m, n) = mn.representatives[u];
            m_np.class_of(&vec![(m, Q::one())], &np.class_of_pair(n, p))
        })
        .collect();
    dense_of_columns(m_np.bimodule.dim(), &cols)
}

/// `B ⊗_B M → M`, `x ⊗ m ↦ x·m`, where `B` is the regular bimodule.
pub fn left_unitor(tp: &TensorProduct, m: &Bimodule) -> Matrix<Q> {
    let cols: SparseColumns =
        tp.representatives.iter().map(|&(x, v)| m.left_basis_apply(x, &vec![(v, Q::one())])).collect();
    dense_of_columns(m.dim(), &cols)
}

/// `M ⊗_B B → M`, `m ⊗ x ↦ m·x`.
pub fn right_unitor(tp: &TensorProduct, m: &Bimodule) -> Matrix<Q> {
    let cols: SparseColumns =
        tp.representatives.iter().map(|&(v, x)| m.right_basis_apply(&vec![(v, Q::one())], x)).collect();
    dense_of_columns(m.dim(), &cols)
}

/// Inverse of a map that preserves Peirce tags, computed block by block.
pub fn peirce_inverse(f: &Matrix<Q>, source: &Bimodule, target: &Bimodule) -> Option<Matrix<Q>> {
    if f.rows() != target.dim() || f.cols() != source.dim() {
        return None;
    }
    let cols: SparseColumns = (0..f.cols()).map(|j| sparse_column(f, j)).collect();
    let inv = peirce_inverse_sparse(&cols, source.peirce(), target.peirce())?;
    Some(dense_of_columns(source.dim(), &inv))
}

/// `tr(g∘f) / dim C` for `f: C → M`, `g: M → C`; on a local `End(C)` with
/// residue field 𝕜 this is the coefficient of the identity modulo the radical.
pub fn top_pairing(g: &Matrix<Q>, f: &Matrix<Q>) -> Q {
    let mut t = Q::zero();
    for i in 0..g.rows() {
        for k in 0..g.cols() {
            let x = &g[(i, k)];
            if !x.is_zero() {
                let y = &f[(k, i)];
                if !y.is_zero() {
                    t = t + &(x.clone() * y);
                }
            }
        }
    }
    t * &Q::new(1, g.rows() as i64)
}

/// Indecomposables with local endomorphism rings, pairwise non-isomorphic,
/// together with all Hom spaces between them and their composition law.
#[derive(Clone, Debug)]
pub struct Catalog {
    objects: Vec<Bimodule>,
    labels: Vec<String>,
    homs: Vec<Vec<HomSpace>>,
    /// `comp[x][y][z][h]` is the matrix of `f ↦ h∘f` from `Hom(x,y)` to
    /// `Hom(x,z)` for the basis element `h` of `Hom(y,z)`.
    comp: Vec<Vec<Vec<Vec<Matrix<Q>>>>>,
}

/// `M ≅ ⊕ catalog[summands[k]]` with mutually inverse witnesses.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<usize>,
    pub offsets: Vec<usize>,
    pub sizes: Vec<usize>,
    /// `⊕ → M`
    pub inclusion: SparseColumns,
    /// `M → ⊕`
    pub projection: SparseColumns,
}

impl Decomposition {
    pub fn multiplicities(&self, catalog_len: usize) -> Vec<usize> {
        let mut m = vec![0; catalog_len];
        for &s in &self.summands {
            m[s] += 1;
        }
        m
    }

    pub fn total_dim(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn inclusion_matrix(&self, dim: usize) -> Matrix<Q> {
        dense_of_columns(dim, &self.inclusion)
    }

    pub fn projection_matrix(&self) -> Matrix<Q> {
        dense_of_columns(self.total_dim(), &self.projection)
    }

    /// Inclusion of summand `k`, as sparse columns into `M`.
    pub fn inclusion_of(&self, k: usize) -> &[SparseVec<Q>] {
        &self.inclusion[self.offsets[k]..self.offsets[k] + self.sizes[k]]
    }

    /// Block `(b, a)` of `P·f·I` in sparse columns, where `f: M → M'` and
    /// `self`, `target` decompose `M`, `M'`.
    pub fn block_of(&self, f: &SparseColumns, target: &Decomposition, a: usize, b: usize) -> SparseColumns {
        let (lo, hi) = (target.offsets[b], target.offsets[b] + target.sizes[b]);
        self.inclusion_of(a)
            .iter()
            .map(|v| {
                let w = apply_sparse(&target.projection, &apply_sparse(f, v));
                w.into_iter().filter(|(i, _)| *i >= lo && *i < hi).map(|(i, x)| (i - lo, x)).collect()
            })
            .collect()
    }
}

impl Catalog {
    pub fn new(entries: Vec<(String, Bimodule)>) -> Result<Catalog> {
        let (labels, objects): (Vec<String>, Vec<Bimodule>) = entries.into_iter().unzip();
        let mut homs = Vec::with_capacity(objects.len());
        for x in &objects {
            homs.push(objects.iter().map(|y| hom_space(x, y)).collect::<Result<Vec<_>>>()?);
        }
        for i in 0..objects.len() {
            let end = &homs[i][i];
            if radical_of_span(end.basis()).dim() + 1 != end.dim() {
                return Err(Error::NotSplit(format!("{} is not indecomposable with split top", labels[i])));
            }
            for j in 0..i {
                for g in homs[i][j].basis() {
                    for f in homs[j][i].basis() {
                        if !top_pairing(f, g).is_zero() {
                            return Err(Error::InvalidInput(format!("{} ≅ {}", labels[i], labels[j])));
                        }
                    }
                }
            }
        }
        let k = objects.len();
        let mut comp = Vec::with_capacity(k);
        for x in 0..k {
            let mut cx = Vec::with_capacity(k);
            for y in 0..k {
                let mut cy = Vec::with_capacity(k);
                for z in 0..k {
                    let (hxy, hyz, hxz) = (&homs[x][y], &homs[y][z], &homs[x][z]);
                    let maps = hyz
                        .basis_sparse()
                        .iter()
                        .map(|h| {
                            let cols: Vec<Vec<Q>> = hxy
                                .basis_sparse()
                                .iter()
                                .map(|f| {
                                    hxz.coordinates_sparse(&compose_sparse(h, f))
                                        .expect("composite of intertwiners is an intertwiner")
                                })
                                .collect();
                            Matrix::from_columns(hxz.dim(), &cols)
                        })
                        .collect();
                    cy.push(maps);
                }
                cx.push(cy);
            }
            comp.push(cx);
        }
        Ok(Catalog { objects, labels, homs, comp })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[Bimodule] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &Bimodule {
        &self.objects[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `Hom(objects[i], objects[j])`
    pub fn hom(&self, i: usize, j: usize) -> &HomSpace {
        &self.homs[i][j]
    }

    /// Matrix of `f ↦ h∘f` on `Hom(x,y)` for `h ∈ Hom(y,z)` in coordinates.
    pub fn postcompose(&self, x: usize, y: usize, z: usize, h: &[Q]) -> Matrix<Q> {
        let mut m = Matrix::zeros(self.homs[x][z].dim(), self.homs[x][y].dim());
        for (c, b) in h.iter().zip(&self.comp[x][y][z]) {
            if !c.is_zero() {
                m.add_scaled(c, b);
            }
        }
        m
    }

    /// Matrix of `f ↦ f∘h` on `Hom(x,y)` for `h ∈ Hom(w,x)` in coordinates.
    pub fn precompose(&self, w: usize, x: usize, y: usize, h: &[Q]) -> Matrix<Q> {
        let cols: Vec<Vec<Q>> = self.comp[w][x][y].iter().map(|m| m.mul_vec(h)).collect();
        Matrix::from_columns(self.homs[w][y].dim(), &cols)
    }

    /// Coordinates of `g∘f` for `f ∈ Hom(i,j)`, `g ∈ Hom(j,k)`.
    pub fn compose(&self, i: usize, j: usize, k: usize, g: &[Q], f: &[Q]) -> Vec<Q> {
        self.postcompose(i, j, k, g).mul_vec(f)
    }

    pub fn identity_coordinates(&self, x: usize) -> Vec<Q> {
        let d = self.objects[x].dim();
        let id: SparseColumns = (0..d).map(|j| vec![(j, Q::one())]).collect();
        self.homs[x][x].coordinates_sparse(&id).expect("identity is an endomorphism")
    }

    /// The functional `End(x) → 𝕜` vanishing on the radical, with `id ↦ 1`.
    pub fn top_functional(&self, x: usize) -> Vec<Q> {
        let d = Q::from(self.objects[x].dim() as i64);
        self.homs[x][x]
            .basis_sparse()
            .iter()
            .map(|b| {
                let mut t = Q::zero();
                for (j, col) in b.iter().enumerate() {
                    for (i, v) in col {
                        if *i == j {
                            t = t + v;
                        }
                    }
                }
                t * &d.inv().unwrap()
            })
            .collect()
    }

    pub fn decompose(&self, m: &Bimodule) -> Result<Decomposition> {
        let mut summands = Vec::new();
        let mut inclusion: SparseColumns = Vec::new();
        let mut offsets = Vec::new();
        let mut sizes = Vec::new();
        for (c, obj) in self.objects.iter().enumerate() {
            if !obj.same_algebras(m) {
                return Err(Error::AlgebraMismatch("catalog and bimodule live over different algebras".into()));
            }
            let into = hom_space(obj, m)?;
            if into.dim() == 0 {
                continue;
            }
            let out = hom_space(m, obj)?;
            let mut pairing = Matrix::zeros(out.dim(), into.dim());
            for (i, g) in out.basis_sparse().iter().enumerate() {
                for (k, f) in into.basis_sparse().iter().enumerate() {
                    pairing[(i, k)] = sparse_top_pairing(g, f, obj.dim());
                }
            }
            let (_, pivots) = crate::linalg::rref(&pairing);
            for &k in &pivots {
                summands.push(c);
                offsets.push(inclusion.len());
                sizes.push(obj.dim());
                inclusion.extend(into.basis_sparse()[k].iter().cloned());
            }
        }
        let total = inclusion.len();
        if total != m.dim() {
            let mut residual: Vec<i64> = m.dimension_vector().iter().map(|&x| x as i64).collect();
            for &s in &summands {
                for (r, x) in residual.iter_mut().zip(self.objects[s].dimension_vector()) {
                    *r -= x as i64;
                }
            }
            return Err(Error::UnmatchedSummand {
                dimension_vector: residual.into_iter().map(|x| x.max(0) as usize).collect(),
            });
        }
        let mut src_peirce = Vec::with_capacity(total);
        for &s in &summands {
            src_peirce.extend_from_slice(self.objects[s].peirce());
        }
        let projection = peirce_inverse_sparse(&inclusion, &src_peirce, m.peirce())
            .ok_or_else(|| Error::NotSplit("catalog summands do not assemble to an isomorphism".into()))?;
        Ok(Decomposition { summands, offsets, sizes, inclusion, projection })
    }
}

fn sparse_top_pairing(g: &SparseColumns, f: &SparseColumns, dim: usize) -> Q {
    // tr(g∘f) = Σ_i (g·f_i)[i]
    let mut t = Q::zero();
    for (i, col) in f.iter().enumerate() {
        for (k, x) in col {
            for (r, y) in &g[*k] {
                if *r == i {
                    t = t + &(x.clone() * y);
                }
            }
        }
    }
    t * &Q::new(1, dim as i64)
}

/// Inverse of a Peirce-preserving map, computed block by block.
pub fn peirce_inverse_sparse(
    f: &SparseColumns,
    source: &[(usize, usize)],
    target: &[(usize, usize)],
) -> Option<SparseColumns> {
    if f.len() != source.len() {
        return None;
    }
    let blocks = |tags: &[(usize, usize)]| {
        let mut b: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, t) in tags.iter().enumerate() {
            b.entry(*t).or_default().push(i);
        }
        b
    };
    let (sb, tb) = (blocks(source), blocks(target));
    if sb.len() != tb.len() || sb.iter().any(|(t, v)| tb.get(t).map(Vec::len) != Some(v.len())) {
        return None;
    }
    let mut inv: SparseColumns = vec![Vec::new(); target.len()];
    for (tag, cols) in &sb {
        let rows = &tb[tag];
        let k = rows.len();
        let rpos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(a, &r)| (r, a)).collect();
        let mut block = Matrix::zeros(k, k);
        for (b, &c) in cols.iter().enumerate() {
            for (r, x) in &f[c] {
                block[(*rpos.get(r)?, b)] = x.clone();
            }
        }
        let bi = block.inverse()?;
        for (a, &r) in rows.iter().enumerate() {
            inv[r] = (0..k).filter(|&b| !bi[(b, a)].is_zero()).map(|b| (cols[b], bi[(b, a)].clone())).collect();
            inv[r].sort_by_key(|p| p.0);
        }
    }
    Some(inv)
}

pub fn column_of(m: &Matrix<Q>, j: usize) -> SparseVec<Q> {
    sparse_column(m, j)
}

pub fn matrix_of_columns(rows: usize, cols: &SparseColumns) -> Matrix<Q> {
    dense_of_columns(rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{build_star_quotient, build_zigzag};

    fn star(n: usize) -> Arc<FiniteDimAlgebra> {
        Arc::new(build_star_quotient(n).unwrap())
    }

    fn zigzag(n: usize) -> Arc<FiniteDimAlgebra> {
        Arc::new(build_zigzag(n).unwrap())
    }

    fn catalog(a: &Arc<FiniteDimAlgebra>, n: usize) -> Catalog {
        let mut entries = vec![("Reg".to_string(), Bimodule::regular(a))];
        for k in 0..=n {
            entries.push((format!("F_{k}"), Bimodule::projective(a, k, a, 0).unwrap()));
        }
        Catalog::new(entries).unwrap()
    }

    #[test]
    fn dimensions_of_generators() {
        for n in 1..=3 {
            let a = star(n);
            assert_eq!(Bimodule::regular(&a).dim(), 3 * n + 2);
            assert_eq!(Bimodule::projective(&a, 0, &a, 0).unwrap().dim(), (n + 2) * (n + 2));
            assert_eq!(Bimodule::projective(&a, 1, &a, 0).unwrap().dim(), 2 * (n + 2));
            let l = zigzag(n);
            assert_eq!(Bimodule::projective(&l, 0, &l, 0).unwrap().dim(), (n + 2) * (n + 2));
            assert_eq!(Bimodule::projective(&l, 1, &l, 0).unwrap().dim(), 3 * (n + 2));
        }
    }

    #[test]
    fn axioms_hold_for_constructions() {
        let a = star(2);
        Bimodule::regular(&a).check_axioms().unwrap();
        Bimodule::projective(&a, 0, &a, 0).unwrap().check_axioms().unwrap();
        Bimodule::projective(&a, 2, &a, 0).unwrap().check_axioms().unwrap();
        let l = zigzag(2);
        Bimodule::regular(&l).check_axioms().unwrap();
        let t = tensor_over(&Bimodule::projective(&l, 1, &l, 0).unwrap(), &Bimodule::projective(&l, 0, &l, 0).unwrap())
            .unwrap();
        t.bimodule().check_axioms().unwrap();
    }

    #[test]
    fn loop_acts_by_zero_on_both_sides() {
        let a = star(3);
        let reg = Bimodule::regular(&a);
        let c = vec![(a.basis_index("c").unwrap(), Q::one())];
        for v in 0..reg.dim() {
            assert!(reg.right_apply(&reg.left_apply(&c, &vec![(v, Q::one())]), &c).is_empty());
        }
    }

    #[test]
    fn hom_dimensions_over_quotient() {
        let a = star(3);
        let reg = Bimodule::regular(&a);
        assert_eq!(hom_space(&reg, &reg).unwrap().dim(), 2);
        assert_eq!(hom_space(&reg, &Bimodule::projective(&a, 0, &a, 0).unwrap()).unwrap().dim(), 2);
        assert_eq!(hom_space(&reg, &Bimodule::projective(&a, 2, &a, 0).unwrap()).unwrap().dim(), 1);
    }

    #[test]
    fn hom_basis_consists_of_intertwiners() {
        let l = zigzag(2);
        let reg = Bimodule::regular(&l);
        let f1 = Bimodule::projective(&l, 1, &l, 0).unwrap();
        let end = hom_space(&reg, &reg).unwrap();
        assert_eq!(end.dim(), 4);
        for (m, n) in [(&reg, &reg), (&reg, &f1), (&f1, &reg), (&f1, &f1)] {
            let h = hom_space(m, n).unwrap();
            for (k, b) in h.basis().iter().enumerate() {
                assert!(is_intertwiner(m, n, b));
                let mut e = vec![Q::zero(); h.dim()];
                e[k] = Q::one();
                assert_eq!(h.coordinates(b), Some(e));
            }
        }
        let mut bad = Matrix::zeros(reg.dim(), reg.dim());
        bad[(0, 1)] = Q::one();
        assert!(!is_intertwiner(&reg, &reg, &bad));
    }

    #[test]
    fn hom_is_additive() {
        let a = star(2);
        let reg = Bimodule::regular(&a);
        let f0 = Bimodule::projective(&a, 0, &a, 0).unwrap();
        let f1 = Bimodule::projective(&a, 1, &a, 0).unwrap();
        let sum = Bimodule::direct_sum(&[&f0, &f1]).unwrap();
        for n in [&reg, &f0, &f1] {
            let total = hom_space(&sum, n).unwrap().dim();
            assert_eq!(total, hom_space(&f0, n).unwrap().dim() + hom_space(&f1, n).unwrap().dim());
        }
    }

    #[test]
    fn tensor_dimensions() {
        let a = star(2);
        for j in 0..=2 {
            for k in 0..=2 {
                let fj = Bimodule::projective(&a, j, &a, 0).unwrap();
                let fk = Bimodule::projective(&a, k, &a, 0).unwrap();
                let t = tensor_over(&fj, &fk).unwrap();
                let left = (0..a.dim()).filter(|&x| a.basis()[x].source == j).count();
                let right = (0..a.dim()).filter(|&x| a.basis()[x].target == 0).count();
                assert_eq!(t.bimodule().dim(), left * a.peirce_dim(0, k) * right);
            }
        }
    }

    #[test]
    fn decompositions() {
        let a = star(2);
        let cat = catalog(&a, 2);
        let (f0, f1, f2) = (cat.object(1), cat.object(2), cat.object(3));
        let dec = cat.decompose(tensor_over(f0, f0).unwrap().bimodule()).unwrap();
        assert_eq!(dec.multiplicities(cat.len()), vec![0, 2, 0, 0]);
        let t = tensor_over(f1, f0).unwrap();
        let dec = cat.decompose(t.bimodule()).unwrap();
        assert_eq!(dec.multiplicities(cat.len()), vec![0, 0, 2, 0]);
        let (inc, proj) = (dec.inclusion_matrix(t.bimodule().dim()), dec.projection_matrix());
        assert!(proj.mul(&inc).is_identity());
        assert!(inc.mul(&proj).is_identity());
        let dec = cat.decompose(tensor_over(f2, f1).unwrap().bimodule()).unwrap();
        assert_eq!(dec.multiplicities(cat.len()), vec![0, 0, 0, 1]);
        let dec = cat.decompose(cat.object(0)).unwrap();
        assert_eq!(dec.multiplicities(cat.len()), vec![1, 0, 0, 0]);
    }

    #[test]
    fn unmatched_summand_is_reported() {
        let a = star(1);
        let reg = Bimodule::regular(&a);
        let cat = Catalog::new(vec![("F_0".into(), Bimodule::projective(&a, 0, &a, 0).unwrap())]).unwrap();
        match cat.decompose(&reg) {
            Err(Error::UnmatchedSummand { dimension_vector }) => assert_eq!(dimension_vector.iter().sum::<usize>(), 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unit_and_associativity_constraints() {
        let a = star(1);
        let reg = Bimodule::regular(&a);
        let f0 = Bimodule::projective(&a, 0, &a, 0).unwrap();
        let f1 = Bimodule::projective(&a, 1, &a, 0).unwrap();
        let t = tensor_over(&reg, &f1).unwrap();
        let u = left_unitor(&t, &f1);
        assert!(is_intertwiner(t.bimodule(), &f1, &u));
        assert!(peirce_inverse(&u, t.bimodule(), &f1).is_some());
        let t = tensor_over(&f1, &reg).unwrap();
        let u = right_unitor(&t, &f1);
        assert!(is_intertwiner(t.bimodule(), &f1, &u));
        assert!(peirce_inverse(&u, t.bimodule(), &f1).is_some());

        let mn = tensor_over(&f1, &f0).unwrap();
        let mn_p = tensor_over(mn.bimodule(), &f1).unwrap();
        let np = tensor_over(&f0, &f1).unwrap();
        let m_np = tensor_over(&f1, np.bimodule()).unwrap();
        let assoc = associator(&mn, &mn_p, &np, &m_np);
        assert!(is_intertwiner(mn_p.bimodule(), m_np.bimodule(), &assoc));
        assert!(peirce_inverse(&assoc, mn_p.bimodule(), m_np.bimodule()).is_some());
    }

    #[test]
    fn tensor_of_morphisms_is_functorial() {
        let a = star(1);
        let f0 = Bimodule::projective(&a, 0, &a, 0).unwrap();
        let f1 = Bimodule::projective(&a, 1, &a, 0).unwrap();
        let end0 = hom_space(&f0, &f0).unwrap();
        let h = hom_space(&f1, &f0).unwrap();
        let t10 = tensor_over(&f1, &f0).unwrap();
        let t00 = tensor_over(&f0, &f0).unwrap();
        for g in end0.basis() {
            for f in h.basis() {
                let fg = tensor_morphism(f, g, &t10, &t00);
                assert!(is_intertwiner(t10.bimodule(), t00.bimodule(), &fg));
                // (f ⊗ 1)(1 ⊗ g) = f ⊗ g
                let id1 = Matrix::identity(f1.dim());
                let id0 = Matrix::identity(f0.dim());
                let split = tensor_morphism(f, &id0, &t10, &t00).mul(&tensor_morphism(&id1, g, &t10, &t10));
                assert_eq!(split, fg);
            }
        }
    }
}
