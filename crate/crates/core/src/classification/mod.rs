//! Set partitions of the leaves, the birepresentations over `A_r` attached
//! to them, simple transitivity certificates and the classification report.

mod functors;
mod modification;

pub use functors::*;
pub use modification::*;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::bicategory::{ActionModel, Birepresentation, IdealFamily, IdealSystem, TwoCells};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::presented::star::{normalize_blocks, partition_colimit, PartitionColimit};
use crate::presented::additive_karoubi_envelope;
use crate::quiver::{build_star_quotient, FiniteDimAlgebra};

/// A partition of `{0, …, n}` in which `0` is alone.  Blocks are sorted and
/// ordered by their least element, so `{0}` is block 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
}

impl SetPartition {
    pub fn new(n: usize, blocks: &[Vec<usize>]) -> Result<SetPartition> {
        let blocks = normalize_blocks(n, blocks)?;
        let mut block_of = vec![0; n + 1];
        for (b, block) in blocks.iter().enumerate() {
            for &i in block {
                block_of[i] = b;
            }
        }
        Ok(SetPartition { n, blocks, block_of })
    }

    pub fn discrete(n: usize) -> SetPartition {
        SetPartition { n, blocks: (0..=n).map(|i| vec![i]).collect(), block_of: (0..=n).collect() }
    }

    /// Number of nonzero blocks.
    pub fn rank(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn is_finer_than(&self, other: &SetPartition) -> bool {
        self.n == other.n && self.blocks.iter().all(|b| b.iter().all(|&i| other.block_of[i] == other.block_of[b[0]]))
    }

    /// Least element of each nonzero block.
    pub fn transversal(&self) -> Vec<usize> {
        self.blocks[1..].iter().map(|b| b[0]).collect()
    }
}

impl core::fmt::Display for SetPartition {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for b in &self.blocks {
            let items: Vec<String> = b.iter().map(|i| i.to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

/// All partitions of `{0, …, n}` with `{0}` a block, in restricted growth
/// order of the leaves.
pub fn enumerate_partitions(n: usize) -> Result<Vec<SetPartition>> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one leaf".into()));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let count = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![vec![0]];
        blocks.extend((0..count).map(|b| (1..=n).filter(|&i| rgs[i - 1] == b).collect::<Vec<_>>()));
        out.push(SetPartition::new(n, &blocks)?);
        // next restricted growth string
        let mut i = n;
        loop {
            if i == 1 {
                return Ok(out);
            }
            i -= 1;
            let bound = rgs[..i].iter().max().copied().unwrap_or(0) + 1;
            if rgs[i] < bound {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
        }
    }
}

/// The birepresentation on `A_r`-proj in which `F_k` acts by
/// `A_r e_{𝔓(k)} ⊗ e_0 A_r`.
pub fn build_cwr_model(p: &SetPartition) -> Result<Birepresentation> {
    let ar = Arc::new(build_star_quotient(p.rank())?);
    let mut gens = vec![("Reg".to_string(), Bimodule::regular(&ar).with_label("Reg"))];
    for k in 0..=p.n {
        let label = format!("F_{k}");
        gens.push((label.clone(), Bimodule::projective(&ar, p.block_of[k], &ar, 0)?.with_label(&label)));
    }
    Birepresentation::from_generators(&format!("C^WR{p}"), ar, gens, TwoCells::Unavailable)
}

/// Action matrices labeled by generator.
pub fn labeled_action_matrices(model: &ActionModel) -> Vec<(String, Vec<Vec<usize>>)> {
    (0..model.generator_count()).map(|g| (model.generator_label(g).to_string(), model.action_matrix(g))).collect()
}

/// An object permutation `σ` with `M'_g[σi][σj] = M_g[i][j]` for every
/// label `g`, if one exists.
pub fn action_equivalence(a: &[(String, Vec<Vec<usize>>)], b: &[(String, Vec<Vec<usize>>)]) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.0 != y.0 || x.1.len() != y.1.len()) {
        return None;
    }
    let k = a.first().map_or(0, |x| x.1.len());
    let mut sigma = Vec::with_capacity(k);
    let mut used = vec![false; k];
    extend_permutation(a, b, &mut sigma, &mut used).then_some(sigma)
}

fn extend_permutation(
    a: &[(String, Vec<Vec<usize>>)],
    b: &[(String, Vec<Vec<usize>>)],
    sigma: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = sigma.len();
    if i == used.len() {
        return true;
    }
    for t in 0..used.len() {
        if used[t] {
            continue;
        }
        let fits = (0..=i).all(|j| {
            let tj = if j == i { t } else { sigma[j] };
            a.iter().zip(b).all(|(x, y)| x.1[i][j] == y.1[t][tj] && x.1[j][i] == y.1[tj][t])
        });
        if fits {
            sigma.push(t);
            used[t] = true;
            if extend_permutation(a, b, sigma, used) {
                return true;
            }
            sigma.pop();
            used[t] = false;
        }
    }
    false
}

/// Outcome of the stable ideal search.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicityReport {
    pub transitive: bool,
    /// number of radical basis elements used as seeds
    pub seeds: usize,
    /// pairwise distinct proper nonzero stable ideals found, closed under sums
    pub proper_ideals: Vec<IdealFamily>,
    /// dimension of the largest stable ideal inside the radical
    pub radical_ideal_dim: usize,
}

impl SimplicityReport {
    pub fn is_simple_transitive(&self) -> bool {
        self.transitive && self.proper_ideals.is_empty() && self.radical_ideal_dim == 0
    }
}

/// Closes every radical basis element to a stable ideal and collects the
/// proper ones together with their sums.
pub fn simple_transitive_check(model: &ActionModel) -> SimplicityReport {
    let catalog = model.catalog().clone();
    let system = IdealSystem::new(catalog.clone(), &[model]);
    let full = IdealFamily::full(&catalog);
    let radical = IdealFamily::radical(&catalog);
    let mut proper: Vec<IdealFamily> = Vec::new();
    let mut seeds = 0;
    for x in 0..catalog.len() {
        for y in 0..catalog.len() {
            for v in radical.components[x][y].basis() {
                seeds += 1;
                let mut seed = IdealFamily::zero(&catalog);
                seed.components[x][y] = crate::linalg::Subspace::from_spanning(v.len(), vec![v.clone()]);
                let c = system.closure(&seed);
                if c != full && !proper.contains(&c) {
                    proper.push(c);
                }
            }
        }
    }
    let mut i = 0;
    while i < proper.len() {
        for j in 0..i {
            let s = proper[i].sum(&proper[j]);
            if s != full && !proper.contains(&s) {
                proper.push(s);
            }
        }
        i += 1;
    }
    SimplicityReport {
        transitive: model.is_transitive(),
        seeds,
        proper_ideals: proper,
        radical_ideal_dim: system.greatest_in_radical().total_dim(),
    }
}

/// Cross-check of the presented colimit against the model over `A_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub classes: usize,
    /// `hom_dims[a][b]` in the envelope, with classes sorted by vertex
    pub hom_dims: Vec<Vec<usize>>,
    /// Hom dimensions between the objects of the bimodule model
    pub model_hom_dims: Vec<Vec<usize>>,
    /// objects of the presented category restricted to the transversal
    pub transversal: Vec<usize>,
}

/// Builds the presented colimit for `p` and compares it with
/// [`build_cwr_model`]: the idempotent completion has one class per vertex
/// of `A_r` with matching Hom dimensions, and the comparison functor is
/// full and faithful on the transversal.
pub fn consistency_cwr_presentation_vs_model(p: &SetPartition, length_cap: usize) -> Result<ConsistencyReport> {
    let colimit = partition_colimit(p.n, &p.blocks, length_cap)?;
    consistency_of(p, &colimit)
}

pub fn consistency_of(p: &SetPartition, colimit: &PartitionColimit) -> Result<ConsistencyReport> {
    let cat = colimit.category();
    let real = colimit.model_realization()?;
    real.check(cat)?;
    let model = build_cwr_model(p)?;
    let r = p.rank();
    let model_hom_dims: Vec<Vec<usize>> = (0..=r)
        .map(|v| (0..=r).map(|w| model.model.catalog().hom(v, w).dim()).collect())
        .collect();
    let env = additive_karoubi_envelope(cat)?;
    if env.class_count() != r + 1 {
        return Err(Error::Certification(format!("{p}: {} indecomposable classes, expected {}", env.class_count(), r + 1)));
    }
    // Each class is sent to one vertex; the vertices must all be distinct.
    let mut vertex_of_class = vec![usize::MAX; r + 1];
    for (i, ind) in env.indecomposables.iter().enumerate() {
        let v = real.vertex[ind.object];
        let c = env.class_of[i];
        if vertex_of_class[c] != usize::MAX && vertex_of_class[c] != v {
            return Err(Error::Certification(format!("{p}: class {c} meets two vertices")));
        }
        vertex_of_class[c] = v;
    }
    let distinct: BTreeSet<usize> = vertex_of_class.iter().copied().collect();
    if distinct.len() != r + 1 {
        return Err(Error::Certification(format!("{p}: classes do not cover the vertices of A_{r}")));
    }
    let mut hom_dims = vec![vec![0; r + 1]; r + 1];
    for a in 0..=r {
        for b in 0..=r {
            hom_dims[vertex_of_class[a]][vertex_of_class[b]] = env.hom_dims[a][b];
        }
    }
    for v in 0..=r {
        for w in 0..=r {
            if hom_dims[v][w] != model_hom_dims[v][w] {
                return Err(Error::Certification(format!(
                    "{p}: Hom(P{v}, P{w}) has dimension {} in the envelope and {} in the model",
                    hom_dims[v][w], model_hom_dims[v][w]
                )));
            }
        }
    }
    let mut transversal = vec![0];
    transversal.extend(p.transversal());
    for c in real.compare_homs(cat)? {
        if transversal.contains(&c.source) && transversal.contains(&c.target) && !c.matches() {
            return Err(Error::Certification(format!(
                "{p}: comparison functor on Hom(P{}, P{}) has rank {} between spaces of dimension {} and {}",
                c.source, c.target, c.rank, c.presented, c.expected
            )));
        }
    }
    Ok(ConsistencyReport { classes: env.class_count(), hom_dims, model_hom_dims, transversal })
}

/// One row of the classification.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassRecord {
    pub partition: SetPartition,
    pub rank: usize,
    pub action_matrices: Vec<(String, Vec<Vec<usize>>)>,
    pub simple_transitive: bool,
    /// `None` when the presented cross-check was not requested
    pub presentation_consistent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub n: usize,
    pub bell_number: usize,
    pub classes: Vec<ClassRecord>,
    pub pairwise_inequivalent: bool,
    /// first pair of classes with permutation-equivalent action matrices
    pub equivalent_pair: Option<(usize, usize)>,
}

impl ClassificationReport {
    pub fn all_certified(&self) -> bool {
        self.pairwise_inequivalent
            && self.classes.len() == self.bell_number
            && self.classes.iter().all(|c| c.simple_transitive && c.presentation_consistent != Some(false))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// run the presented cross-check when `n` is at most this
    pub presentation_bound: usize,
    pub length_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { presentation_bound: 3, length_cap: crate::presented::DEFAULT_LENGTH_CAP }
    }
}

/// Model, certificates and action matrices for a single partition.
pub fn classify_partition(p: &SetPartition, opts: &ClassifyOptions) -> Result<ClassRecord> {
    let model = build_cwr_model(p)?;
    let report = simple_transitive_check(&model.model);
    let presentation_consistent = if p.n <= opts.presentation_bound {
        Some(consistency_cwr_presentation_vs_model(p, opts.length_cap).is_ok())
    } else {
        None
    };
    Ok(ClassRecord {
        partition: p.clone(),
        rank: p.rank(),
        action_matrices: labeled_action_matrices(&model.model),
        simple_transitive: report.is_simple_transitive(),
        presentation_consistent,
    })
}

/// Assembles per-partition records, in canonical partition order, into the
/// report and checks pairwise inequivalence.
pub fn assemble_report(n: usize, classes: Vec<ClassRecord>) -> ClassificationReport {
    let mut equivalent_pair = None;
    'outer: for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if action_equivalence(&classes[i].action_matrices, &classes[j].action_matrices).is_some() {
                equivalent_pair = Some((i, j));
                break 'outer;
            }
        }
    }
    ClassificationReport {
        n,
        bell_number: classes.len(),
        pairwise_inequivalent: equivalent_pair.is_none(),
        equivalent_pair,
        classes,
    }
}

pub fn classify(n: usize, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let parts = enumerate_partitions(n)?;
    let classes = parts.iter().map(|p| classify_partition(p, opts)).collect::<Result<Vec<_>>>()?;
    Ok(assemble_report(n, classes))
}

/// Basis substitution along a map of quivers: vertex `v ↦ vertices[v]`,
/// arrow `α ↦ arrows[α]`.  Returns the matrix on basis coordinates, or an
/// error if some path of the source is sent outside the target basis in a
/// way that does not respect endpoints.
pub fn path_substitution(
    source: &FiniteDimAlgebra,
    target: &FiniteDimAlgebra,
    vertices: &[usize],
    arrows: &[usize],
) -> Result<crate::linalg::Matrix<crate::linalg::Q>> {
    let cols = source
        .basis()
        .iter()
        .map(|b| {
            if b.word.is_empty() {
                Ok(target.basis_vector(target.idempotent(vertices[b.source])))
            } else {
                let w: Vec<usize> = b.word.iter().map(|&a| arrows[a]).collect();
                let (s, _) = target
                    .quiver()
                    .endpoints(&w)
                    .ok_or_else(|| Error::InvalidInput(format!("image of {} is not a path", b.name)))?;
                target.word_element(s, &w)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(crate::linalg::Matrix::from_columns(target.dim(), &cols))
}

/// Vertex and arrow maps of the comparison `A_n → A_r` along a partition:
/// `a_k ↦ a_{𝔓(k)}`, `b_k ↦ b_{𝔓(k)}`.
pub fn block_substitution(p: &SetPartition) -> (Vec<usize>, Vec<usize>) {
    let (n, r) = (p.n, p.rank());
    let mut arrows = Vec::with_capacity(2 * n);
    for k in 1..=n {
        arrows.push(p.block_of[k] - 1);
    }
    for k in 1..=n {
        arrows.push(r + p.block_of[k] - 1);
    }
    (p.block_of.clone(), arrows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicategory::{f_index, Birepresentation, StarBicategory, StarKind};
    use crate::presented::DEFAULT_LENGTH_CAP;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_partitions(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52]);
        let three: Vec<String> = enumerate_partitions(2).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(three, vec!["{0}{1,2}", "{0}{1}{2}"]);
    }

    #[test]
    fn partitions_are_canonical_and_distinct() {
        let ps = enumerate_partitions(4).unwrap();
        let set: BTreeSet<_> = ps.iter().cloned().collect();
        assert_eq!(set.len(), ps.len());
        for p in &ps {
            assert_eq!(p.blocks[0], vec![0]);
            assert!(p.blocks.windows(2).all(|w| w[0][0] < w[1][0]));
            assert_eq!(&SetPartition::new(4, &p.blocks).unwrap(), p);
        }
    }

    #[test]
    fn merged_pair_model() {
        let p = SetPartition::new(2, &[vec![0], vec![1, 2]]).unwrap();
        let m = build_cwr_model(&p).unwrap();
        assert_eq!(m.algebra.dim(), 5);
        let (f1, f2) = (m.action_matrix(f_index(1)), m.action_matrix(f_index(2)));
        assert_eq!(f1, f2);
        assert_eq!(f1, vec![vec![0, 0], vec![2, 1]]);
    }

    #[test]
    fn discrete_model_is_the_cell_representation() {
        let z = StarBicategory::new(2, StarKind::Zigzag).unwrap();
        let cell = Birepresentation::cell(&z).unwrap();
        let m = build_cwr_model(&SetPartition::discrete(2)).unwrap();
        for g in 0..4 {
            assert_eq!(m.action_matrix(g), cell.action_matrix(g));
        }
    }

    #[test]
    fn action_rows_follow_blocks() {
        for p in enumerate_partitions(3).unwrap() {
            let m = build_cwr_model(&p).unwrap();
            for k in 1..=3 {
                for l in 1..=3 {
                    let same = m.action_matrix(f_index(k)) == m.action_matrix(f_index(l));
                    assert_eq!(same, p.block_of[k] == p.block_of[l], "{p} {k} {l}");
                }
            }
        }
    }

    #[test]
    fn permutation_search() {
        let a = vec![("g".to_string(), vec![vec![0, 1], vec![0, 0]])];
        let b = vec![("g".to_string(), vec![vec![0, 0], vec![1, 0]])];
        assert_eq!(action_equivalence(&a, &b), Some(vec![1, 0]));
        let c = vec![("g".to_string(), vec![vec![1, 0], vec![0, 0]])];
        assert_eq!(action_equivalence(&a, &c), None);
    }

    #[test]
    fn models_are_simple_transitive() {
        for p in enumerate_partitions(3).unwrap() {
            let m = build_cwr_model(&p).unwrap();
            let rep = simple_transitive_check(&m.model);
            assert!(rep.is_simple_transitive(), "{p}");
            assert!(rep.seeds > 0);
        }
    }

    #[test]
    fn subrepresentation_has_one_proper_ideal() {
        let a = StarBicategory::new(2, StarKind::Quotient).unwrap();
        let nm = crate::bicategory::subrep_n(&a).unwrap();
        let rep = simple_transitive_check(&nm);
        assert!(rep.transitive);
        assert!(!rep.is_simple_transitive());
        assert_eq!(rep.proper_ideals.len(), 1);
        assert_eq!(rep.proper_ideals[0].total_dim(), rep.radical_ideal_dim);
    }

    #[test]
    fn presentation_agrees_with_model() {
        for p in enumerate_partitions(2).unwrap() {
            let c = consistency_cwr_presentation_vs_model(&p, DEFAULT_LENGTH_CAP).unwrap();
            assert_eq!(c.classes, p.rank() + 1);
            assert_eq!(c.hom_dims, c.model_hom_dims);
        }
    }

    #[test]
    fn classify_small() {
        let rep = classify(2, &ClassifyOptions::default()).unwrap();
        assert_eq!(rep.bell_number, 2);
        assert!(rep.all_certified(), "{rep:?}");
    }

    #[test]
    fn block_substitution_is_multiplicative_where_defined() {
        let p = SetPartition::new(2, &[vec![0], vec![1, 2]]).unwrap();
        let (a2, a1) = (build_star_quotient(2).unwrap(), build_star_quotient(1).unwrap());
        let (v, arr) = block_substitution(&p);
        let m = path_substitution(&a2, &a1, &v, &arr).unwrap();
        let c2 = a2.basis_vector(a2.basis_index("c").unwrap());
        let c1 = a1.basis_vector(a1.basis_index("c").unwrap());
        assert_eq!(m.mul_vec(&c2), c1);
        let b2 = a2.basis_vector(a2.basis_index("b2").unwrap());
        assert_eq!(m.mul_vec(&b2), a1.basis_vector(a1.basis_index("b1").unwrap()));
    }
}
