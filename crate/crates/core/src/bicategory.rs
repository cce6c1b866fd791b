//! The bicategories of projective bimodules over `Λ_n` and `A_n`, their
//! birepresentations, biideals, evaluation ideals and stable ideals.
//!
//! Everything is strict: 1-morphisms are bimodules, horizontal composition
//! is the tensor product, and a birepresentation is a category of
//! projective modules acted on by tensoring with bimodules. Morphisms
//! between indecomposables are stored by coordinates in the canonical Hom
//! bases of a [`Catalog`].

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::bimodule::{
    cyclic_map, hom_space, identity_columns, tensor_morphism_sparse, tensor_over, Bimodule, Catalog, Decomposition,
    SparseColumns, TensorProduct,
};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace, Q};
use crate::quiver::{build_ground_field, build_star_quotient, build_zigzag, AlgebraMap, FiniteDimAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `G ⊗ X`
    Left,
    /// `X ⊗ G`
    Right,
}

#[derive(Clone, Debug)]
pub struct Product {
    pub tensor: TensorProduct,
    pub decomposition: Decomposition,
}

/// A morphism between direct sums of catalog objects, cut into blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockImage {
    /// Catalog index of each source summand.
    pub cols: Vec<usize>,
    pub rows: Vec<usize>,
    /// `blocks[b][a]` in coordinates of `Hom(cols[a], rows[b])`
    pub blocks: Vec<Vec<Vec<Q>>>,
}

impl BlockImage {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().flatten().all(|x| x.is_zero())
    }
}

/// Catalog objects acted on by tensoring with a list of generator bimodules.
#[derive(Clone, Debug)]
pub struct ActionModel {
    catalog: Arc<Catalog>,
    side: Side,
    labels: Vec<String>,
    generators: Vec<Bimodule>,
    products: Vec<Vec<Product>>,
}

impl ActionModel {
    pub fn new(catalog: Arc<Catalog>, side: Side, generators: Vec<(String, Bimodule)>) -> Result<ActionModel> {
        let mut products = Vec::with_capacity(generators.len());
        for (_, g) in &generators {
            let mut row = Vec::with_capacity(catalog.len());
            for x in catalog.objects() {
                let tensor = match side {
                    Side::Left => tensor_over(g, x)?,
                    Side::Right => tensor_over(x, g)?,
                };
                let decomposition = catalog.decompose(tensor.bimodule())?;
                row.push(Product { tensor, decomposition });
            }
            products.push(row);
        }
        let (labels, generators) = generators.into_iter().unzip();
        Ok(ActionModel { catalog, side, labels, generators, products })
    }

    pub fn catalog(&self) -> &Arc<Catalog> {
        &self.catalog
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generator(&self, g: usize) -> &Bimodule {
        &self.generators[g]
    }

    pub fn product(&self, g: usize, x: usize) -> &Product {
        &self.products[g][x]
    }

    fn realize(&self, g: usize, x: usize, y: usize, f: &SparseColumns) -> SparseColumns {
        let id = identity_columns(self.generators[g].dim());
        let (s, t) = (&self.products[g][x].tensor, &self.products[g][y].tensor);
        match self.side {
            Side::Left => tensor_morphism_sparse(&id, f, s, t),
            Side::Right => tensor_morphism_sparse(f, &id, s, t),
        }
    }

    fn blocks(&self, map: &SparseColumns, src: &Decomposition, tgt: &Decomposition) -> BlockImage {
        let blocks = (0..tgt.summands.len())
            .map(|b| {
                (0..src.summands.len())
                    .map(|a| {
                        self.catalog
                            .hom(src.summands[a], tgt.summands[b])
                            .coordinates_sparse(&src.block_of(map, tgt, a, b))
                            .expect("blocks of intertwiners are intertwiners")
                    })
                    .collect()
            })
            .collect();
        BlockImage { cols: src.summands.clone(), rows: tgt.summands.clone(), blocks }
    }

    /// Image of `f ∈ Hom(x, y)` under generator `g`.
    pub fn act(&self, g: usize, x: usize, y: usize, f: &[Q]) -> BlockImage {
        let fm = self.catalog.hom(x, y).combine_sparse(f);
        self.blocks(&self.realize(g, x, y, &fm), &self.products[g][x].decomposition, &self.products[g][y].decomposition)
    }

    /// Component at `z` of a map `α: G → H` between generator images.
    pub fn evaluate(&self, g: usize, h: usize, alpha: &SparseColumns, z: usize) -> BlockImage {
        let id = identity_columns(self.catalog.object(z).dim());
        let (s, t) = (&self.products[g][z].tensor, &self.products[h][z].tensor);
        let map = match self.side {
            Side::Left => tensor_morphism_sparse(alpha, &id, s, t),
            Side::Right => tensor_morphism_sparse(&id, alpha, s, t),
        };
        self.blocks(&map, &self.products[g][z].decomposition, &self.products[h][z].decomposition)
    }

    /// Entry `(i, j)`: multiplicity of object `i` in `G(X_j)`.
    pub fn action_matrix(&self, g: usize) -> Vec<Vec<usize>> {
        let k = self.catalog.len();
        let mut m = vec![vec![0; k]; k];
        for j in 0..k {
            for &s in &self.products[g][j].decomposition.summands {
                m[s][j] += 1;
            }
        }
        m
    }

    /// Every object is a summand of some generator applied to any other.
    pub fn is_transitive(&self) -> bool {
        let k = self.catalog.len();
        let mut reach = vec![vec![false; k]; k];
        for (j, row) in reach.iter_mut().enumerate() {
            row[j] = true;
        }
        for g in 0..self.generator_count() {
            let m = self.action_matrix(g);
            for (i, row) in m.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    if x > 0 {
                        reach[j][i] = true;
                    }
                }
            }
        }
        for via in 0..k {
            for j in 0..k {
                if reach[j][via] {
                    for i in 0..k {
                        if reach[via][i] {
                            reach[j][i] = true;
                        }
                    }
                }
            }
        }
        reach.iter().all(|r| r.iter().all(|&b| b))
    }
}

/// One subspace of Hom coordinates for every ordered pair of catalog objects.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealFamily {
    pub components: Vec<Vec<Subspace<Q>>>,
}

impl IdealFamily {
    pub fn zero(catalog: &Catalog) -> IdealFamily {
        let k = catalog.len();
        IdealFamily {
            components: (0..k).map(|x| (0..k).map(|y| Subspace::zero(catalog.hom(x, y).dim())).collect()).collect(),
        }
    }

    pub fn full(catalog: &Catalog) -> IdealFamily {
        let k = catalog.len();
        IdealFamily {
            components: (0..k).map(|x| (0..k).map(|y| Subspace::full(catalog.hom(x, y).dim())).collect()).collect(),
        }
    }

    /// All non-isomorphisms: everything between distinct objects and the
    /// kernel of the top functional on each local endomorphism ring.
    pub fn radical(catalog: &Catalog) -> IdealFamily {
        let mut r = IdealFamily::full(catalog);
        for x in 0..catalog.len() {
            let top = catalog.top_functional(x);
            r.components[x][x] = Subspace::from_spanning(top.len(), vec![top]).annihilator();
        }
        r
    }

    pub fn dims(&self) -> Vec<Vec<usize>> {
        self.components.iter().map(|r| r.iter().map(Subspace::dim).collect()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().flatten().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn is_contained_in(&self, other: &IdealFamily) -> bool {
        self.components
            .iter()
            .flatten()
            .zip(other.components.iter().flatten())
            .all(|(a, b)| a.is_subspace_of(b).unwrap_or(false))
    }

    pub fn sum(&self, other: &IdealFamily) -> IdealFamily {
        IdealFamily {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.sum(b).expect("same ambient")).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// `f ↦ h∘f` for the basis element `h` of `Hom(y, z)`
    PostCompose { basis: usize },
    /// `f ↦ f∘h` for the basis element `h` of `Hom(w, x)`
    PreCompose { basis: usize },
    /// one block of the image under a generator
    Action { model: usize, generator: usize },
}

/// A linear map from one Hom space of the catalog to another that a stable
/// ideal must respect.
#[derive(Clone, Debug)]
pub struct Edge {
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub kind: EdgeKind,
    pub map: Matrix<Q>,
}

/// The first basis vector of an ideal component mapped outside the ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub edge: usize,
    pub vector: Vec<Q>,
    pub description: String,
}

/// Composition and action maps on a catalog; closure and fixpoint
/// computations for ideals stable under them.
#[derive(Clone, Debug)]
pub struct IdealSystem {
    catalog: Arc<Catalog>,
    edges: Vec<Edge>,
    outgoing: BTreeMap<(usize, usize), Vec<usize>>,
    model_names: Vec<(Side, Vec<String>)>,
}

impl IdealSystem {
    pub fn new(catalog: Arc<Catalog>, models: &[&ActionModel]) -> IdealSystem {
        let k = catalog.len();
        let mut edges = Vec::new();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    for b in 0..catalog.hom(y, z).dim() {
                        let mut h = vec![Q::zero(); catalog.hom(y, z).dim()];
                        h[b] = Q::one();
                        let map = catalog.postcompose(x, y, z, &h);
                        if !map.is_zero() {
                            edges.push(Edge { source: (x, y), target: (x, z), kind: EdgeKind::PostCompose { basis: b }, map });
                        }
                    }
                }
                for w in 0..k {
                    for b in 0..catalog.hom(w, x).dim() {
                        let mut h = vec![Q::zero(); catalog.hom(w, x).dim()];
                        h[b] = Q::one();
                        let map = catalog.precompose(w, x, y, &h);
                        if !map.is_zero() {
                            edges.push(Edge { source: (x, y), target: (w, y), kind: EdgeKind::PreCompose { basis: b }, map });
                        }
                    }
                }
            }
        }
        for (mi, model) in models.iter().enumerate() {
            for g in 0..model.generator_count() {
                for x in 0..k {
                    for y in 0..k {
                        let d = catalog.hom(x, y).dim();
                        if d == 0 {
                            continue;
                        }
                        let images: Vec<BlockImage> = (0..d)
                            .map(|i| {
                                let mut f = vec![Q::zero(); d];
                                f[i] = Q::one();
                                model.act(g, x, y, &f)
                            })
                            .collect();
                        let first = &images[0];
                        for (a, &ca) in first.cols.iter().enumerate() {
                            for (b, &rb) in first.rows.iter().enumerate() {
                                let cols: Vec<Vec<Q>> = images.iter().map(|im| im.blocks[b][a].clone()).collect();
                                let map = Matrix::from_columns(catalog.hom(ca, rb).dim(), &cols);
                                if !map.is_zero() {
                                    edges.push(Edge {
                                        source: (x, y),
                                        target: (ca, rb),
                                        kind: EdgeKind::Action { model: mi, generator: g },
                                        map,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut outgoing: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            outgoing.entry(e.source).or_default().push(i);
        }
        let model_names = models.iter().map(|m| (m.side(), m.generator_labels().to_vec())).collect();
        IdealSystem { catalog, edges, outgoing, model_names }
    }

    pub fn catalog(&self) -> &Arc<Catalog> {
        &self.catalog
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn describe(&self, e: usize) -> String {
        let edge = &self.edges[e];
        let l = self.catalog.labels();
        let (x, y) = edge.source;
        let (p, q) = edge.target;
        match &edge.kind {
            EdgeKind::PostCompose { basis } => {
                format!("postcompose Hom({},{}) with basis {basis} of Hom({},{})", l[x], l[y], l[y], l[q])
            }
            EdgeKind::PreCompose { basis } => {
                format!("precompose Hom({},{}) with basis {basis} of Hom({},{})", l[x], l[y], l[p], l[x])
            }
            EdgeKind::Action { model, generator } => {
                let (side, names) = &self.model_names[*model];
                let g = &names[*generator];
                let how = match side {
                    Side::Left => format!("{g}∙−"),
                    Side::Right => format!("−∙{g}"),
                };
                format!("{how} on Hom({},{}), block Hom({},{})", l[x], l[y], l[p], l[q])
            }
        }
    }

    /// Least ideal containing `seeds` and stable under every edge.
    pub fn closure(&self, seeds: &IdealFamily) -> IdealFamily {
        let mut ideal = seeds.clone();
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        let mut queued = BTreeMap::new();
        for (x, row) in ideal.components.iter().enumerate() {
            for (y, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    queue.push_back((x, y));
                    queued.insert((x, y), true);
                }
            }
        }
        while let Some(src) = queue.pop_front() {
            queued.insert(src, false);
            let Some(out) = self.outgoing.get(&src) else { continue };
            for &e in out {
                let edge = &self.edges[e];
                let img = ideal.components[src.0][src.1].image(&edge.map);
                let (p, q) = edge.target;
                let cur = &ideal.components[p][q];
                if img.is_subspace_of(cur).expect("same ambient") {
                    continue;
                }
                ideal.components[p][q] = cur.sum(&img).expect("same ambient");
                if !queued.get(&(p, q)).copied().unwrap_or(false) {
                    queued.insert((p, q), true);
                    queue.push_back((p, q));
                }
            }
        }
        ideal
    }

    /// Largest stable ideal contained in `bound`.
    pub fn greatest_within(&self, bound: &IdealFamily) -> IdealFamily {
        let mut ideal = bound.clone();
        loop {
            let mut changed = false;
            for edge in &self.edges {
                let (x, y) = edge.source;
                let (p, q) = edge.target;
                if ideal.components[x][y].is_zero() {
                    continue;
                }
                let pre = Subspace::preimage(&edge.map, &ideal.components[p][q]);
                let next = ideal.components[x][y].intersection(&pre).expect("same ambient");
                if next.dim() < ideal.components[x][y].dim() {
                    ideal.components[x][y] = next;
                    changed = true;
                }
            }
            if !changed {
                return ideal;
            }
        }
    }

    /// Largest stable ideal made of radical morphisms.
    pub fn greatest_in_radical(&self) -> IdealFamily {
        self.greatest_within(&IdealFamily::radical(&self.catalog))
    }

    pub fn find_violation(&self, ideal: &IdealFamily) -> Option<Violation> {
        for (e, edge) in self.edges.iter().enumerate() {
            let (x, y) = edge.source;
            let (p, q) = edge.target;
            for v in ideal.components[x][y].basis() {
                if !ideal.components[p][q].contains(&edge.map.mul_vec(v)) {
                    return Some(Violation { edge: e, vector: v.clone(), description: self.describe(e) });
                }
            }
        }
        None
    }

    /// Number of (edge, basis vector) pairs a stability check inspects.
    pub fn check_count(&self, ideal: &IdealFamily) -> usize {
        self.edges.iter().map(|e| ideal.components[e.source.0][e.source.1].dim()).sum()
    }

    /// Whether the operators induced on `ideal` span its full endomorphism
    /// algebra, so that it has no proper nonzero stable subideal even after
    /// extending scalars.
    pub fn is_absolutely_simple(&self, ideal: &IdealFamily) -> bool {
        let mut offsets = BTreeMap::new();
        let mut d = 0;
        for (x, row) in ideal.components.iter().enumerate() {
            for (y, c) in row.iter().enumerate() {
                offsets.insert((x, y), d);
                d += c.dim();
            }
        }
        if d == 0 {
            return false;
        }
        let mut ops: Vec<Vec<Q>> = Vec::new();
        for edge in &self.edges {
            let (x, y) = edge.source;
            let (p, q) = edge.target;
            let (src, tgt) = (&ideal.components[x][y], &ideal.components[p][q]);
            if src.is_zero() {
                continue;
            }
            let mut op = Matrix::zeros(d, d);
            for (i, v) in src.basis().iter().enumerate() {
                let Some(coords) = tgt.coordinates(&edge.map.mul_vec(v)) else {
                    return false;
                };
                for (r, c) in coords.into_iter().enumerate() {
                    op[(offsets[&(p, q)] + r, offsets[&(x, y)] + i)] = c;
                }
            }
            if !op.is_zero() {
                ops.push(op.into_entries());
            }
        }
        let op_span = Subspace::from_spanning(d * d, ops);
        let ops: Vec<Matrix<Q>> = op_span.basis().iter().map(|v| Matrix::from_flat(d, d, v.clone())).collect();
        let mut alg = Subspace::from_spanning(d * d, vec![Matrix::<Q>::identity(d).into_entries()]);
        loop {
            let mut gens: Vec<Vec<Q>> = alg.basis().to_vec();
            for a in alg.basis() {
                let am = Matrix::from_flat(d, d, a.clone());
                for o in &ops {
                    gens.push(o.mul(&am).into_entries());
                }
            }
            let next = Subspace::from_spanning(d * d, gens);
            if next.dim() == alg.dim() {
                return alg.dim() == d * d;
            }
            alg = next;
        }
    }
}

/// Which star algebra a bicategory is built over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarKind {
    /// the zigzag algebra `Λ_n`
    Zigzag,
    /// `A_n = Λ_n / span{c_k}`
    Quotient,
}

pub const REG: usize = 0;

/// Catalog index of `F_k`.
pub fn f_index(k: usize) -> usize {
    k + 1
}

/// A 1-morphism as multiplicities of `Reg, F_0, …, F_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneMorphism {
    pub multiplicities: Vec<usize>,
}

impl OneMorphism {
    pub fn indecomposable(len: usize, i: usize) -> OneMorphism {
        let mut multiplicities = vec![0; len];
        multiplicities[i] = 1;
        OneMorphism { multiplicities }
    }

    pub fn describe(&self, labels: &[String]) -> String {
        let parts: Vec<String> = self
            .multiplicities
            .iter()
            .zip(labels)
            .filter(|(m, _)| **m > 0)
            .map(|(m, l)| if *m == 1 { l.clone() } else { format!("{m}·{l}") })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

/// The one-object bicategory with 1-morphisms `add{Reg, F_0, …, F_n}`.
#[derive(Clone, Debug)]
pub struct StarBicategory {
    n: usize,
    kind: StarKind,
    algebra: Arc<FiniteDimAlgebra>,
    catalog: Arc<Catalog>,
    left: ActionModel,
    right: ActionModel,
}

/// `Reg, F_0, …, F_n` over `a`.
pub fn star_catalog_entries(a: &Arc<FiniteDimAlgebra>, n: usize) -> Result<Vec<(String, Bimodule)>> {
    let mut entries = vec![("Reg".to_string(), Bimodule::regular(a))];
    for k in 0..=n {
        entries.push((format!("F_{k}"), Bimodule::projective(a, k, a, 0)?));
    }
    Ok(entries)
}

impl StarBicategory {
    pub fn new(n: usize, kind: StarKind) -> Result<StarBicategory> {
        let algebra = Arc::new(match kind {
            StarKind::Zigzag => build_zigzag(n)?,
            StarKind::Quotient => build_star_quotient(n)?,
        });
        let entries = star_catalog_entries(&algebra, n)?;
        let catalog = Arc::new(Catalog::new(entries.clone())?);
        let left = ActionModel::new(catalog.clone(), Side::Left, entries.clone())?;
        let right = ActionModel::new(catalog.clone(), Side::Right, entries)?;
        Ok(StarBicategory { n, kind, algebra, catalog, left, right })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> StarKind {
        self.kind
    }

    pub fn algebra(&self) -> &Arc<FiniteDimAlgebra> {
        &self.algebra
    }

    pub fn catalog(&self) -> &Arc<Catalog> {
        &self.catalog
    }

    pub fn labels(&self) -> &[String] {
        self.catalog.labels()
    }

    /// `G ⊗ X`, i.e. whiskering on the left by `G`.
    pub fn left_action(&self) -> &ActionModel {
        &self.left
    }

    pub fn right_action(&self) -> &ActionModel {
        &self.right
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.catalog.hom(x, y).dim()
    }

    /// `x ∘ y`, realized as `x ⊗ y` and decomposed.
    pub fn compose(&self, x: &OneMorphism, y: &OneMorphism) -> OneMorphism {
        let k = self.catalog.len();
        let mut out = vec![0; k];
        for (i, &mi) in x.multiplicities.iter().enumerate() {
            for (j, &mj) in y.multiplicities.iter().enumerate() {
                if mi * mj == 0 {
                    continue;
                }
                for &s in &self.left.product(i, j).decomposition.summands {
                    out[s] += mi * mj;
                }
            }
        }
        OneMorphism { multiplicities: out }
    }

    pub fn ideal_system(&self) -> IdealSystem {
        IdealSystem::new(self.catalog.clone(), &[&self.left, &self.right])
    }

    /// Biideal given by spanning morphisms, as sparse columns, per pair.
    pub fn biideal_from_maps(&self, maps: &[((usize, usize), SparseColumns)]) -> Result<IdealFamily> {
        let mut gens: BTreeMap<(usize, usize), Vec<Vec<Q>>> = BTreeMap::new();
        for ((x, y), m) in maps {
            let coords = self
                .catalog
                .hom(*x, *y)
                .coordinates_sparse(m)
                .ok_or_else(|| Error::NotAMorphism(format!("not a map {} → {}", self.labels()[*x], self.labels()[*y])))?;
            gens.entry((*x, *y)).or_default().push(coords);
        }
        let mut fam = IdealFamily::zero(&self.catalog);
        for ((x, y), vs) in gens {
            fam.components[x][y] = Subspace::from_spanning(self.hom_dim(x, y), vs);
        }
        Ok(fam)
    }

    /// Coordinates of a family, checked against the actual Hom dimensions.
    pub fn check_family(&self, ideal: &IdealFamily) -> Result<()> {
        let k = self.catalog.len();
        if ideal.components.len() != k || ideal.components.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch { expected: k, found: ideal.components.len() });
        }
        for x in 0..k {
            for y in 0..k {
                let a = ideal.components[x][y].ambient();
                if a != self.hom_dim(x, y) {
                    return Err(Error::DimensionMismatch { expected: self.hom_dim(x, y), found: a });
                }
            }
        }
        Ok(())
    }

    /// `I^m`: vertical composites of `m` morphisms of `I`.
    pub fn power(&self, ideal: &IdealFamily, m: usize) -> IdealFamily {
        let k = self.catalog.len();
        let mut cur = ideal.clone();
        for _ in 1..m {
            let mut next = IdealFamily::zero(&self.catalog);
            for x in 0..k {
                for y in 0..k {
                    let mut gens = Vec::new();
                    for z in 0..k {
                        for beta in ideal.components[z][y].basis() {
                            let post = self.catalog.postcompose(x, z, y, beta);
                            for alpha in cur.components[x][z].basis() {
                                gens.push(post.mul_vec(alpha));
                            }
                        }
                    }
                    next.components[x][y] = Subspace::from_spanning(self.hom_dim(x, y), gens);
                }
            }
            cur = next;
        }
        cur
    }

    /// Least `m` with `I^m = 0`, if it is at most `cap`.
    pub fn nilpotency_degree(&self, ideal: &IdealFamily, cap: usize) -> Option<usize> {
        (1..=cap).find(|&m| self.power(ideal, m).is_zero())
    }

    /// The horizontal powers: `I^{h,1} = I` and `I^{h,m}` spanned by the
    /// blocks of `γ ∘_h β` with `γ ∈ I`, `β ∈ I^{h,m-1}`.
    pub fn horizontal_power(&self, ideal: &IdealFamily, m: usize) -> IdealFamily {
        let k = self.catalog.len();
        let mut cur = ideal.clone();
        for _ in 1..m {
            let mut gens: BTreeMap<(usize, usize), Vec<Vec<Q>>> = BTreeMap::new();
            for g in 0..k {
                for g2 in 0..k {
                    for gamma in ideal.components[g][g2].basis() {
                        let gm = self.catalog.hom(g, g2).combine_sparse(gamma);
                        for f in 0..k {
                            for f2 in 0..k {
                                for beta in cur.components[f][f2].basis() {
                                    let bm = self.catalog.hom(f, f2).combine_sparse(beta);
                                    let (s, t) = (self.left.product(g, f), self.left.product(g2, f2));
                                    let map = tensor_morphism_sparse(&gm, &bm, &s.tensor, &t.tensor);
                                    let (sd, td) = (&s.decomposition, &t.decomposition);
                                    for a in 0..sd.summands.len() {
                                        for b in 0..td.summands.len() {
                                            let (x, y) = (sd.summands[a], td.summands[b]);
                                            let c = self
                                                .catalog
                                                .hom(x, y)
                                                .coordinates_sparse(&sd.block_of(&map, td, a, b))
                                                .expect("blocks of intertwiners are intertwiners");
                                            gens.entry((x, y)).or_default().push(c);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            let mut next = IdealFamily::zero(&self.catalog);
            for ((x, y), vs) in gens {
                next.components[x][y] = Subspace::from_spanning(self.hom_dim(x, y), vs);
            }
            cur = next;
        }
        cur
    }
}

/// Outcome of checking that a family is a biideal.
#[derive(Clone, Debug)]
pub struct BiidealCertificate {
    pub ok: bool,
    /// `(generator, side, source, target, basis index)` for every whiskering checked
    pub whiskerings: Vec<(String, Side, String, String, usize)>,
    pub composition_checks: usize,
    pub witness: Option<String>,
}

pub fn verify_biideal(bicat: &StarBicategory, ideal: &IdealFamily) -> Result<BiidealCertificate> {
    bicat.check_family(ideal)?;
    let system = bicat.ideal_system();
    let mut whiskerings = Vec::new();
    let mut composition_checks = 0;
    let labels = bicat.labels();
    for edge in system.edges() {
        let (x, y) = edge.source;
        let d = ideal.components[x][y].dim();
        match edge.kind {
            EdgeKind::Action { model, generator } => {
                let side = if model == 0 { Side::Left } else { Side::Right };
                for b in 0..d {
                    whiskerings.push((labels[generator].clone(), side, labels[x].clone(), labels[y].clone(), b));
                }
            }
            _ => composition_checks += d,
        }
    }
    whiskerings.sort_by(|a, b| (&a.0, a.1 == Side::Right, &a.2, &a.3, a.4).cmp(&(&b.0, b.1 == Side::Right, &b.2, &b.3, b.4)));
    whiskerings.dedup();
    let witness = system.find_violation(ideal).map(|v| v.description);
    Ok(BiidealCertificate { ok: witness.is_none(), whiskerings, composition_checks, witness })
}

/// The biideal of `𝓑̃_n` killed by passing from `Λ_n` to `A_n`: the leaf
/// loops on `Reg` and `c_j ⊗ e_0`, `c_j ⊗ c` on `F_j` for `j ≠ 0`.
pub fn build_biideal_i(bicat: &StarBicategory) -> Result<IdealFamily> {
    if bicat.kind() != StarKind::Zigzag {
        return Err(Error::InvalidInput("the biideal lives over the zigzag algebra".into()));
    }
    let a = bicat.algebra();
    let cat = bicat.catalog();
    let mut maps = Vec::new();
    let reg = cat.object(REG);
    for k in 1..=bicat.n() {
        let ck = a.basis_index(&format!("c{k}")).expect("leaf loop");
        maps.push(((REG, REG), cyclic_map(reg, reg, &vec![(ck, Q::one())])?));
    }
    for j in 1..=bicat.n() {
        let fj = cat.object(f_index(j));
        for name in [format!("c{j}⊗e0"), format!("c{j}⊗c")] {
            let u = fj.basis_names().iter().position(|s| *s == name).expect("basis tensor");
            maps.push(((f_index(j), f_index(j)), cyclic_map(fj, fj, &vec![(u, Q::one())])?));
        }
    }
    bicat.biideal_from_maps(&maps)
}

/// `A ⊗_Λ − ⊗_Λ A` on the 1-morphisms of the zigzag bicategory.
#[derive(Clone, Debug)]
pub struct BaseChange {
    left: Bimodule,
    right: Bimodule,
    inner: Vec<TensorProduct>,
    outer: Vec<TensorProduct>,
}

impl BaseChange {
    pub fn new(source: &StarBicategory, target: &Arc<FiniteDimAlgebra>) -> Result<BaseChange> {
        let pi = AlgebraMap::by_paths(source.algebra().clone(), target.clone())?;
        let reg = Bimodule::regular(target);
        let left = reg.restrict_right(&pi)?;
        let right = reg.restrict_left(&pi)?;
        let mut inner = Vec::new();
        let mut outer = Vec::new();
        for x in source.catalog().objects() {
            let i = tensor_over(&left, x)?;
            let o = tensor_over(i.bimodule(), &right)?;
            inner.push(i);
            outer.push(o);
        }
        Ok(BaseChange { left, right, inner, outer })
    }

    pub fn image(&self, x: usize) -> &Bimodule {
        self.outer[x].bimodule()
    }

    pub fn image_morphism(&self, x: usize, y: usize, alpha: &SparseColumns) -> SparseColumns {
        let inner = tensor_morphism_sparse(&identity_columns(self.left.dim()), alpha, &self.inner[x], &self.inner[y]);
        tensor_morphism_sparse(&inner, &identity_columns(self.right.dim()), &self.outer[x], &self.outer[y])
    }
}

/// How 2-morphisms of the zigzag bicategory act on a birepresentation.
#[derive(Clone, Debug)]
pub enum TwoCells {
    /// the representation is over `Λ_n` itself
    Identity,
    /// through `A ⊗_Λ − ⊗_Λ A`
    BaseChange(Arc<BaseChange>),
    /// only 1-morphisms are modeled
    Unavailable,
}

/// The projectives `Re_0, …, Re_r` as left modules.
pub fn module_catalog(r: &Arc<FiniteDimAlgebra>) -> Result<Catalog> {
    let k = Arc::new(build_ground_field());
    let entries = (0..r.vertex_count())
        .map(|i| Ok((format!("P{i}"), Bimodule::projective(r, i, &k, 0)?.with_label(&format!("P{i}")))))
        .collect::<Result<Vec<_>>>()?;
    Catalog::new(entries)
}

/// A birepresentation of a star bicategory on `R`-proj, with generator
/// `Reg, F_0, …, F_n` acting by tensoring with the listed `R`-bimodules.
#[derive(Clone, Debug)]
pub struct Birepresentation {
    pub name: String,
    pub algebra: Arc<FiniteDimAlgebra>,
    pub model: ActionModel,
    pub two_cells: TwoCells,
}

impl Birepresentation {
    pub fn from_generators(
        name: &str,
        algebra: Arc<FiniteDimAlgebra>,
        generators: Vec<(String, Bimodule)>,
        two_cells: TwoCells,
    ) -> Result<Birepresentation> {
        let catalog = Arc::new(module_catalog(&algebra)?);
        let model = ActionModel::new(catalog, Side::Left, generators)?;
        Ok(Birepresentation { name: name.to_string(), algebra, model, two_cells })
    }

    /// The defining action of a star bicategory on projective modules over its algebra.
    pub fn defining(bicat: &StarBicategory) -> Result<Birepresentation> {
        let gens = bicat.labels().iter().cloned().zip(bicat.catalog().objects().iter().cloned()).collect();
        let two = if bicat.kind() == StarKind::Zigzag { TwoCells::Identity } else { TwoCells::Unavailable };
        Birepresentation::from_generators("defining", bicat.algebra().clone(), gens, two)
    }

    /// The cell birepresentation over `A_n`, with 1- and 2-morphisms of the
    /// zigzag bicategory acting through `A ⊗_Λ − ⊗_Λ A`.
    pub fn cell(zigzag: &StarBicategory) -> Result<Birepresentation> {
        let a = Arc::new(build_star_quotient(zigzag.n())?);
        let bc = Arc::new(BaseChange::new(zigzag, &a)?);
        let gens = zigzag
            .labels()
            .iter()
            .enumerate()
            .map(|(x, l)| (l.clone(), bc.image(x).clone().with_label(l)))
            .collect();
        Birepresentation::from_generators("cell", a, gens, TwoCells::BaseChange(bc))
    }

    pub fn ideal_system(&self) -> IdealSystem {
        IdealSystem::new(self.model.catalog().clone(), &[&self.model])
    }

    pub fn action_matrix(&self, g: usize) -> Vec<Vec<usize>> {
        self.model.action_matrix(g)
    }

    pub fn is_simple_transitive(&self) -> bool {
        self.model.is_transitive() && self.ideal_system().greatest_in_radical().is_zero()
    }
}

/// `ev_M(I)`: the least stable ideal containing every component `(Mα)_X`
/// with `α` in the biideal.
pub fn ev_ideal(rep: &Birepresentation, bicat: &StarBicategory, ideal: &IdealFamily) -> Result<IdealFamily> {
    let cat = rep.model.catalog().clone();
    let mut seeds: BTreeMap<(usize, usize), Vec<Vec<Q>>> = BTreeMap::new();
    let k = bicat.catalog().len();
    for x in 0..k {
        for y in 0..k {
            for alpha in ideal.components[x][y].basis() {
                let am = bicat.catalog().hom(x, y).combine_sparse(alpha);
                let realized = match &rep.two_cells {
                    TwoCells::Identity => am,
                    TwoCells::BaseChange(bc) => bc.image_morphism(x, y, &am),
                    TwoCells::Unavailable => {
                        return Err(Error::InvalidInput("this birepresentation does not model 2-morphisms".into()))
                    }
                };
                for z in 0..cat.len() {
                    let img = rep.model.evaluate(x, y, &realized, z);
                    for (a, &ca) in img.cols.iter().enumerate() {
                        for (b, &rb) in img.rows.iter().enumerate() {
                            seeds.entry((ca, rb)).or_default().push(img.blocks[b][a].clone());
                        }
                    }
                }
            }
        }
    }
    let mut fam = IdealFamily::zero(&cat);
    for ((x, y), vs) in seeds {
        fam.components[x][y] = Subspace::from_spanning(cat.hom(x, y).dim(), vs);
    }
    Ok(rep.ideal_system().closure(&fam))
}

/// One row of the comparison between `Λ_n` and `A_n` Hom spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct DimensionRow {
    pub source: String,
    pub target: String,
    pub hom_zigzag: usize,
    pub hom_quotient: usize,
    pub ideal: usize,
    /// rank of `Q` on this Hom space
    pub rank: usize,
    /// whether the kernel of `Q` is exactly the biideal component
    pub kernel_is_ideal: bool,
}

impl DimensionRow {
    pub fn holds(&self) -> bool {
        self.hom_zigzag == self.hom_quotient + self.ideal && self.rank == self.hom_quotient && self.kernel_is_ideal
    }
}

/// `dim Hom_Λ(M,N) = dim Hom_A(QM,QN) + dim I(M,N)` for all indecomposable pairs.
pub fn quotient_dimension_identity(zigzag: &StarBicategory, quotient: &StarBicategory) -> Result<Vec<DimensionRow>> {
    let ideal = build_biideal_i(zigzag)?;
    let bc = BaseChange::new(zigzag, quotient.algebra())?;
    let k = zigzag.catalog().len();
    let qcat = quotient.catalog();
    let decs: Vec<Decomposition> = (0..k).map(|x| qcat.decompose(bc.image(x))).collect::<Result<_>>()?;
    for (x, d) in decs.iter().enumerate() {
        if d.summands != [x] {
            return Err(Error::Certification(format!("Q({}) is not {}", zigzag.labels()[x], qcat.labels()[x])));
        }
    }
    let mut rows = Vec::new();
    for x in 0..k {
        for y in 0..k {
            let h = zigzag.catalog().hom(x, y);
            let cols: Vec<Vec<Q>> = h
                .basis_sparse()
                .iter()
                .map(|f| {
                    let img = bc.image_morphism(x, y, f);
                    qcat.hom(x, y)
                        .coordinates_sparse(&decs[x].block_of(&img, &decs[y], 0, 0))
                        .expect("image of a bimodule map")
                })
                .collect();
            let qmap = Matrix::from_columns(qcat.hom(x, y).dim(), &cols);
            let kernel = qmap.kernel();
            rows.push(DimensionRow {
                source: zigzag.labels()[x].clone(),
                target: zigzag.labels()[y].clone(),
                hom_zigzag: h.dim(),
                hom_quotient: qcat.hom(x, y).dim(),
                ideal: ideal.components[x][y].dim(),
                rank: qmap.rank(),
                kernel_is_ideal: kernel == ideal.components[x][y],
            });
        }
    }
    Ok(rows)
}

/// The subbirepresentation `N` of the principal one on `add{F_0, …, F_n}`
/// over `A_n`.
pub fn subrep_n(quotient: &StarBicategory) -> Result<ActionModel> {
    let a = quotient.algebra();
    let entries = star_catalog_entries(a, quotient.n())?;
    let objects = Arc::new(Catalog::new(entries[1..].to_vec())?);
    ActionModel::new(objects, Side::Left, entries)
}

/// The unique maximal stable ideal of `N` and whether it is the only
/// proper nonzero one.
pub fn subrep_n_maximal_ideal(n_model: &ActionModel) -> (IdealFamily, bool) {
    let system = IdealSystem::new(n_model.catalog().clone(), &[n_model]);
    let ideal = system.greatest_in_radical();
    let unique = !ideal.is_zero() && system.is_absolutely_simple(&ideal);
    (ideal, unique)
}

/// `dim Hom(Ae_v, Ae_w) = dim e_v A e_w`, indexed `[v][w]`.
pub fn hom_dimension_table(a: &FiniteDimAlgebra) -> Vec<Vec<usize>> {
    (0..a.vertex_count()).map(|v| (0..a.vertex_count()).map(|w| a.peirce_dim(v, w)).collect()).collect()
}

/// Whether two bimodules are isomorphic, by mutual decomposition.
pub fn isomorphic_in(catalog: &Catalog, m: &Bimodule, n: &Bimodule) -> Result<bool> {
    let (a, b) = (catalog.decompose(m)?, catalog.decompose(n)?);
    Ok(a.multiplicities(catalog.len()) == b.multiplicities(catalog.len()))
}

/// Dimension of `Hom(m, n)` for arbitrary bimodules.
pub fn hom_dim(m: &Bimodule, n: &Bimodule) -> Result<usize> {
    Ok(hom_space(m, n)?.dim())
}
