//! Quivers, path algebras modulo relations, and the star algebras.
//!
//! Products follow the composition convention: `x·y` is "`x` after `y`", so
//! a word `[α, β]` is the path that traverses `β` first. With `a_k: 0 → k`
//! and `b_k: k → 0`, the loop `c = b_k a_k` lives at vertex 0.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::{densify, Field, Matrix, SparseEchelon, SparseVec, Subspace, Q};

/// Arrow indices; the leftmost arrow is traversed last.
pub type Word = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn new(label: &str, source: usize, target: usize) -> Arrow {
        Arrow { label: label.to_string(), source, target }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Quiver> {
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::InvalidInput(format!("arrow {} has an endpoint out of range", a.label)));
            }
            if a.label.is_empty() || arrows[..i].iter().any(|b| b.label == a.label) {
                return Err(Error::InvalidInput(format!("arrow label {:?} empty or repeated", a.label)));
            }
        }
        Ok(Quiver { vertex_count, arrows })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// `(source, target)` of a nonempty composable word.
    pub fn endpoints(&self, w: &[usize]) -> Option<(usize, usize)> {
        let (first, last) = (w.first()?, w.last()?);
        for pair in w.windows(2) {
            if self.arrows[pair[0]].source != self.arrows[pair[1]].target {
                return None;
            }
        }
        Some((self.arrows[*last].source, self.arrows[*first].target))
    }

    pub fn word_name(&self, w: &[usize]) -> String {
        w.iter().map(|&a| self.arrows[a].label.as_str()).collect()
    }

    pub fn word_from_labels(&self, labels: &[&str]) -> Result<Word> {
        labels
            .iter()
            .map(|l| self.arrow_index(l).ok_or_else(|| Error::InvalidInput(format!("unknown arrow {l:?}"))))
            .collect()
    }

    /// Length first, then lexicographic on the label sequence.
    fn cmp_words(&self, x: &[usize], y: &[usize]) -> Ordering {
        x.len().cmp(&y.len()).then_with(|| {
            let xs = x.iter().map(|&a| self.arrows[a].label.as_str());
            let ys = y.iter().map(|&a| self.arrows[a].label.as_str());
            xs.cmp(ys)
        })
    }
}

/// A linear combination of parallel paths, read as `Σ cᵢ pᵢ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub terms: Vec<(Q, Word)>,
}

impl Relation {
    pub fn monomial(w: Word) -> Relation {
        Relation { terms: vec![(Q::one(), w)] }
    }

    /// `x = y`
    pub fn equal(x: Word, y: Word) -> Relation {
        Relation { terms: vec![(Q::one(), x), (Q::from(-1), y)] }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPresentation {
    pub name: String,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    /// Every path of this length vanishes.
    pub nilpotency: usize,
}

impl AlgebraPresentation {
    pub fn new(name: &str, quiver: Quiver, relations: Vec<Relation>, nilpotency: usize) -> Result<Self> {
        if nilpotency == 0 {
            return Err(Error::InvalidInput("nilpotency bound must be at least 1".into()));
        }
        for r in &relations {
            let mut ends = None;
            for (_, w) in &r.terms {
                let e = quiver
                    .endpoints(w)
                    .ok_or_else(|| Error::InvalidInput("relation term is empty or not composable".into()))?;
                if ends.is_some_and(|x| x != e) {
                    return Err(Error::InvalidInput("relation mixes paths with different endpoints".into()));
                }
                ends = Some(e);
            }
        }
        Ok(AlgebraPresentation { name: name.to_string(), quiver, relations, nilpotency })
    }

    fn star_quiver(n: usize) -> Result<Quiver> {
        if n == 0 {
            return Err(Error::InvalidInput("the star graph needs at least one leaf".into()));
        }
        let mut arrows: Vec<Arrow> = (1..=n).map(|k| Arrow::new(&format!("a{k}"), 0, k)).collect();
        arrows.extend((1..=n).map(|k| Arrow::new(&format!("b{k}"), k, 0)));
        Quiver::new(n + 1, arrows)
    }

    /// Zigzag algebra on the star graph with `n` leaves.
    pub fn zigzag(n: usize) -> Result<Self> {
        let q = Self::star_quiver(n)?;
        let a = |k: usize| k - 1;
        let b = |k: usize| n + k - 1;
        let mut rels = Vec::new();
        for j in 1..=n {
            for i in 1..=n {
                if i != j {
                    rels.push(Relation::monomial(vec![a(j), b(i)]));
                }
            }
        }
        for k in 2..=n {
            rels.push(Relation::equal(vec![b(k), a(k)], vec![b(1), a(1)]));
        }
        Self::new(&format!("Lambda_{n}"), q, rels, 3)
    }

    /// The zigzag algebra with the leaf loops `a_k b_k` killed.
    pub fn star_quotient(n: usize) -> Result<Self> {
        let mut p = Self::zigzag(n)?;
        for k in 1..=n {
            p.relations.push(Relation::monomial(vec![k - 1, n + k - 1]));
        }
        p.name = format!("A_{n}");
        Ok(p)
    }

    /// Path algebra of `2 ⇄ 0 ⇄ 1` modulo the fourth power of the arrow ideal.
    pub fn three_vertex_radical_four() -> Result<Self> {
        let q = Quiver::new(
            3,
            vec![Arrow::new("a1", 0, 1), Arrow::new("a2", 0, 2), Arrow::new("b1", 1, 0), Arrow::new("b2", 2, 0)],
        )?;
        Self::new("B", q, Vec::new(), 4)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    /// Empty for the vertex idempotents.
    pub word: Word,
    pub source: usize,
    pub target: usize,
}

impl BasisElement {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_idempotent(&self) -> bool {
        self.word.is_empty()
    }
}

/// A finite-dimensional algebra with a basis of paths.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    name: String,
    quiver: Quiver,
    nilpotency: usize,
    basis: Vec<BasisElement>,
    mult: Vec<SparseVec<Q>>,
    idempotents: Vec<usize>,
    arrows: Vec<SparseVec<Q>>,
    reductions: BTreeMap<(usize, Word), SparseVec<Q>>,
}

impl PartialEq for FiniteDimAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.quiver == other.quiver && self.basis == other.basis && self.mult == other.mult
    }
}

/// All paths of length below `bound`, keyed by `(source, word)` so that the
/// trivial paths stay distinguishable.
fn enumerate_paths(q: &Quiver, bound: usize) -> Vec<(usize, usize, Word)> {
    let mut out: Vec<(usize, usize, Word)> = (0..q.vertex_count()).map(|v| (v, v, Vec::new())).collect();
    let mut frontier = out.clone();
    for _ in 1..bound {
        let mut next = Vec::new();
        for (s, t, w) in &frontier {
            for (ai, a) in q.arrows().iter().enumerate() {
                if a.source == *t {
                    let mut nw = vec![ai];
                    nw.extend_from_slice(w);
                    next.push((*s, a.target, nw));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn algebra_from_presentation(p: &AlgebraPresentation) -> Result<FiniteDimAlgebra> {
    let q = &p.quiver;
    let n = p.nilpotency;
    let mut paths = enumerate_paths(q, n);
    // Largest first: pivots land on the largest paths, so the surviving basis
    // consists of the least paths in each class.
    paths.sort_by(|x, y| q.cmp_words(&y.2, &x.2).then_with(|| y.0.cmp(&x.0)));
    let index: BTreeMap<(usize, Word), usize> =
        paths.iter().enumerate().map(|(i, (s, _, w))| ((*s, w.clone()), i)).collect();

    let mut ech = SparseEchelon::<Q>::new(paths.len());
    for r in &p.relations {
        let (s, t) = q.endpoints(&r.terms[0].1).unwrap();
        // Surround the relation by every path u on the left and v on the right.
        for (_, _, u) in paths.iter().filter(|(us, _, _)| *us == t) {
            for (vs, _, v) in paths.iter().filter(|(_, vt, _)| *vt == s) {
                let mut row: BTreeMap<usize, Q> = BTreeMap::new();
                for (c, w) in &r.terms {
                    let len = u.len() + w.len() + v.len();
                    if len >= n {
                        continue;
                    }
                    let mut full = u.clone();
                    full.extend_from_slice(w);
                    full.extend_from_slice(v);
                    let col = index[&(*vs, full)];
                    let e = row.remove(&col).unwrap_or_else(Q::zero) + c;
                    if !e.is_zero() {
                        row.insert(col, e);
                    }
                }
                ech.insert(row.into_iter().collect());
            }
        }
    }

    for v in 0..q.vertex_count() {
        if ech.reduce(vec![(index[&(v, Vec::new())], Q::one())]).is_empty() {
            return Err(Error::InconsistentRelations { vertex: v });
        }
    }

    let free: Vec<usize> = ech.free_columns().into_iter().rev().collect();
    let position: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let basis: Vec<BasisElement> = free
        .iter()
        .map(|&c| {
            let (s, t, w) = &paths[c];
            let name = if w.is_empty() { format!("e{s}") } else { q.word_name(w) };
            BasisElement { name, word: w.clone(), source: *s, target: *t }
        })
        .collect();

    let mut reductions = BTreeMap::new();
    for (i, (s, _, w)) in paths.iter().enumerate() {
        let red = ech.reduce(vec![(i, Q::one())]);
        let mut v: SparseVec<Q> = red.into_iter().map(|(c, x)| (position[&c], x)).collect();
        v.sort_by_key(|(c, _)| *c);
        reductions.insert((*s, w.clone()), v);
    }

    let dim = basis.len();
    let mut mult = vec![Vec::new(); dim * dim];
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            if x.source != y.target || x.len() + y.len() >= n {
                continue;
            }
            let mut w = x.word.clone();
            w.extend_from_slice(&y.word);
            mult[i * dim + j] = reductions[&(y.source, w)].clone();
        }
    }
    let idempotents = (0..q.vertex_count()).map(|v| position[&index[&(v, Vec::new())]]).collect();
    let arrows = (0..q.arrows().len())
        .map(|a| reductions.get(&(q.arrows()[a].source, vec![a])).cloned().unwrap_or_default())
        .collect();

    Ok(FiniteDimAlgebra {
        name: p.name.clone(),
        quiver: q.clone(),
        nilpotency: n,
        basis,
        mult,
        idempotents,
        arrows,
        reductions,
    })
}

/// The zigzag algebra `Λ_n`, with `c = b_1a_1` and `c_k = a_kb_k` named.
pub fn build_zigzag(n: usize) -> Result<FiniteDimAlgebra> {
    let mut alg = algebra_from_presentation(&AlgebraPresentation::zigzag(n)?)?;
    alg.name_star_loops(n, true);
    Ok(alg)
}

/// The star quotient `A_n = Λ_n / span{c_k}`.
pub fn build_star_quotient(n: usize) -> Result<FiniteDimAlgebra> {
    let mut alg = algebra_from_presentation(&AlgebraPresentation::star_quotient(n)?)?;
    alg.name_star_loops(n, false);
    Ok(alg)
}

/// The ground field as a one-vertex algebra; left `R`-modules are
/// `R`-`𝕜`-bimodules.
pub fn build_ground_field() -> FiniteDimAlgebra {
    let q = Quiver::new(1, Vec::new()).expect("one vertex");
    let p = AlgebraPresentation::new("k", q, Vec::new(), 1).expect("valid");
    algebra_from_presentation(&p).expect("nonzero")
}

impl FiniteDimAlgebra {
    fn name_star_loops(&mut self, n: usize, leaves: bool) {
        let c = vec![n, 0];
        for b in &mut self.basis {
            if b.word == c {
                b.name = "c".into();
            } else if leaves && b.word.len() == 2 && b.word[0] + n == b.word[1] {
                b.name = format!("c{}", b.word[0] + 1);
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn nilpotency_bound(&self) -> usize {
        self.nilpotency
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<Q> {
        &self.mult[i * self.dim() + j]
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut out = vec![Q::zero(); d];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.clone() * b;
                for (k, c) in self.mul_basis(i, j) {
                    out[*k] = out[*k].clone() + &(ab.clone() * c);
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<Q> {
        let mut u = vec![Q::zero(); self.dim()];
        for &e in &self.idempotents {
            u[e] = Q::one();
        }
        u
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn arrow_element(&self, a: usize) -> &SparseVec<Q> {
        &self.arrows[a]
    }

    /// Element represented by a path; zero when the path is long enough to vanish.
    pub fn word_element(&self, source: usize, w: &[usize]) -> Result<Vec<Q>> {
        if !w.is_empty() && self.quiver.endpoints(w).map(|e| e.0) != Some(source) {
            return Err(Error::InvalidInput("word not composable from the given source".into()));
        }
        if w.len() >= self.nilpotency {
            return Ok(vec![Q::zero(); self.dim()]);
        }
        Ok(densify(&self.reductions[&(source, w.to_vec())], self.dim()))
    }

    pub fn element_by_labels(&self, labels: &[&str]) -> Result<Vec<Q>> {
        let w = self.quiver.word_from_labels(labels)?;
        let (s, _) = self.quiver.endpoints(&w).ok_or_else(|| Error::InvalidInput("empty or broken path".into()))?;
        self.word_element(s, &w)
    }

    /// Generators for module actions: vertex idempotents first, then arrows.
    pub fn generator_count(&self) -> usize {
        self.vertex_count() + self.quiver.arrows().len()
    }

    pub fn generator_element(&self, g: usize) -> SparseVec<Q> {
        let v = self.vertex_count();
        if g < v {
            vec![(self.idempotents[g], Q::one())]
        } else {
            self.arrows[g - v].clone()
        }
    }

    pub fn generator_name(&self, g: usize) -> String {
        let v = self.vertex_count();
        if g < v {
            format!("e{g}")
        } else {
            self.quiver.arrows()[g - v].label.clone()
        }
    }

    /// Matrix of `y ↦ x·y` in the basis.
    pub fn left_mul_matrix(&self, x: &[Q]) -> Matrix<Q> {
        let d = self.dim();
        let mut m = Matrix::<Q>::zeros(d, d);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..d {
                for (k, c) in self.mul_basis(i, j) {
                    m[(*k, j)] = m[(*k, j)].clone() + &(a.clone() * c);
                }
            }
        }
        m
    }

    /// Matrix of `y ↦ y·x` in the basis.
    pub fn right_mul_matrix(&self, x: &[Q]) -> Matrix<Q> {
        let d = self.dim();
        let mut m = Matrix::<Q>::zeros(d, d);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..d {
                for (k, c) in self.mul_basis(j, i) {
                    m[(*k, j)] = m[(*k, j)].clone() + &(a.clone() * c);
                }
            }
        }
        m
    }

    /// Basis indices spanning `e_v A e_w` (paths from `w` to `v`).
    pub fn peirce_indices(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].target == v && self.basis[i].source == w).collect()
    }

    pub fn peirce_dim(&self, v: usize, w: usize) -> usize {
        self.peirce_indices(v, w).len()
    }

    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.basis[i].is_idempotent()).collect()
    }

    /// Radical basis and the least `m` with `Rad^m = 0`.
    pub fn radical_and_nilpotency(&self) -> (Vec<usize>, usize) {
        let rad = self.radical_basis();
        let d = self.dim();
        let mut power = Subspace::from_spanning(d, rad.iter().map(|&i| self.basis_vector(i)).collect());
        let mut m = 1;
        while !power.is_zero() {
            let mut gens = Vec::new();
            for x in power.basis() {
                for &r in &rad {
                    gens.push(self.mul(x, &self.basis_vector(r)));
                }
            }
            power = Subspace::from_spanning(d, gens);
            m += 1;
        }
        (rad, m)
    }

    /// Exhaustive associativity check on basis triples.
    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = densify(self.mul_basis(i, j), d);
                for k in 0..d {
                    let jk = densify(self.mul_basis(j, k), d);
                    if self.mul(&ij, &self.basis_vector(k)) != self.mul(&self.basis_vector(i), &jk) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn format_element(&self, x: &[Q]) -> String {
        let mut parts = Vec::new();
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = &self.basis[i].name;
            if c.is_one() {
                parts.push(name.clone());
            } else {
                parts.push(format!("{c}*{name}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// A linear map between algebras given on bases.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub source: Arc<FiniteDimAlgebra>,
    pub target: Arc<FiniteDimAlgebra>,
    /// `dim target × dim source`
    pub matrix: Matrix<Q>,
}

impl AlgebraMap {
    /// The map sending each basis path of the source to the same path in the
    /// target; both algebras must be quotients of one path algebra.
    pub fn by_paths(source: Arc<FiniteDimAlgebra>, target: Arc<FiniteDimAlgebra>) -> Result<AlgebraMap> {
        if source.quiver != target.quiver {
            return Err(Error::AlgebraMismatch("quivers differ".into()));
        }
        let cols: Vec<Vec<Q>> = source
            .basis()
            .iter()
            .map(|b| target.word_element(b.source, &b.word))
            .collect::<Result<_>>()?;
        let matrix = Matrix::from_columns(target.dim(), &cols);
        Ok(AlgebraMap { source, target, matrix })
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        self.matrix.mul_vec(x)
    }

    /// Unital and multiplicative on all basis pairs.
    pub fn is_homomorphism(&self) -> bool {
        if self.apply(&self.source.unit()) != self.target.unit() {
            return false;
        }
        let d = self.source.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.apply(&densify(self.source.mul_basis(i, j), d));
                let rhs = self.target.mul(&self.matrix.column(i), &self.matrix.column(j));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn kernel(&self) -> Subspace<Q> {
        self.matrix.kernel()
    }
}
