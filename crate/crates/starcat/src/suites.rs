//! The verification suites behind each command.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use starcat_core::bicategory::{
    build_biideal_i, ev_ideal, f_index, quotient_dimension_identity, subrep_n, subrep_n_maximal_ideal, verify_biideal,
    Birepresentation, StarBicategory, StarKind, REG,
};
use starcat_core::classification::{
    assemble_report, build_s_modification, check_modification_axiom, classify_partition, consistency_of,
    enumerate_partitions, extend_from_regular, modification_space, natural_transformations, naturality_counterexample,
    normalize_modification, projectives, scalar_proportionality, scaled_functor, chi_invariant, whisker_along_partition,
    ClassRecord, ClassifyOptions, NaturalityVerdict, QuiverAutomorphism, SetPartition, Square,
};
use starcat_core::presented::examples::{arrow_coequalizer, truncation};
use starcat_core::presented::star::{index_pairs, partition_colimit};
use starcat_core::presented::{additive_karoubi_envelope, Morphism, PresentedCategory};
use starcat_core::quiver::{algebra_from_presentation, build_star_quotient, AlgebraPresentation, Arrow, FiniteDimAlgebra, Quiver, Relation};
use starcat_core::{Error, Field, Q};

use crate::crosscheck::hom_spaces_mod_p;
use crate::report::*;
use crate::CliError;

/// Random combinations per Hom space in prime-field mode.
pub const CROSSCHECK_SAMPLES: usize = 2;

/// `χ` values sampled by `modcheck`.
pub fn chi_samples() -> Vec<Q> {
    vec![Q::one(), Q::from(2), Q::from(-1), Q::new(1, 2)]
}

pub fn verify(n: usize, prime: Option<(u64, u64)>) -> Result<VerifyReport, Error> {
    let z = StarBicategory::new(n, StarKind::Zigzag)?;
    let a = StarBicategory::new(n, StarKind::Quotient)?;
    let ideal = build_biideal_i(&z)?;
    let cert = verify_biideal(&z, &ideal)?;
    let labels = z.labels();
    let dims = ideal.dims();
    let mut biideal_components = Vec::new();
    for (x, row) in dims.iter().enumerate() {
        for (y, &d) in row.iter().enumerate() {
            if d > 0 {
                biideal_components.push(IdealComponent { source: labels[x].clone(), target: labels[y].clone(), dim: d });
            }
        }
    }
    let rows = quotient_dimension_identity(&z, &a)?;
    let dim_identity: Vec<DimensionEntry> = rows
        .iter()
        .map(|r| DimensionEntry {
            source: r.source.clone(),
            target: r.target.clone(),
            hom_zigzag: r.hom_zigzag,
            hom_quotient: r.hom_quotient,
            ideal: r.ideal,
            holds: r.holds(),
        })
        .collect();
    let cell = Birepresentation::cell(&z)?;
    let defining = Birepresentation::defining(&z)?;
    let (n_ideal, unique) = subrep_n_maximal_ideal(&subrep_n(&a)?);
    let crosscheck = prime.map(|(p, seed)| {
        let mut c = hom_spaces_mod_p(z.catalog(), &format!("Lambda_{n}"), p, seed, CROSSCHECK_SAMPLES);
        let d = hom_spaces_mod_p(a.catalog(), &format!("A_{n}"), p, seed.wrapping_add(1), CROSSCHECK_SAMPLES);
        c.hom_spaces += d.hom_spaces;
        c.samples += d.samples;
        c.failures.extend(d.failures);
        c
    });
    Ok(VerifyReport {
        n,
        zigzag_dim: z.algebra().dim(),
        star_dim: a.algebra().dim(),
        biideal_ok: cert.ok,
        biideal_components,
        biideal_witness: cert.witness,
        nilpotency_degree: z.nilpotency_degree(&ideal, 8),
        dim_identity_ok: dim_identity.iter().all(|r| r.holds),
        dim_identity,
        ev_cell_zero: ev_ideal(&cell, &z, &ideal)?.is_zero(),
        ev_defining_nonzero: !ev_ideal(&defining, &z, &ideal)?.is_zero(),
        cell_simple_transitive: cell.is_simple_transitive(),
        subrep_ideal_dim: n_ideal.total_dim(),
        subrep_unique_ideal: unique,
        crosscheck,
    })
}

/// Closed-form Hom dimensions between `Reg, F_0, …, F_n`: the endomorphisms
/// of the regular bimodule and the maps out of it are the tabulated values,
/// and maps out of `F_i = Ae_i ⊗ e_0A` are `e_i M e_0` for the target `M`.
pub fn expected_hom_dim(kind: StarKind, n: usize, a: &FiniteDimAlgebra, x: usize, y: usize) -> usize {
    match (x, y) {
        (REG, REG) => match kind {
            StarKind::Zigzag => n + 2,
            StarKind::Quotient => 2,
        },
        (REG, f) => match kind {
            StarKind::Zigzag => 2,
            StarKind::Quotient if f == f_index(0) => 2,
            StarKind::Quotient => 1,
        },
        (f, REG) => a.peirce_dim(f - 1, 0),
        (f, g) => a.peirce_dim(f - 1, g - 1) * a.peirce_dim(0, 0),
    }
}

pub fn homtable(n: usize, kind: StarKind, prime: Option<(u64, u64)>) -> Result<HomTable, Error> {
    let b = StarBicategory::new(n, kind)?;
    let labels = b.labels().to_vec();
    let mut entries = Vec::new();
    for x in 0..labels.len() {
        for y in 0..labels.len() {
            let dim = b.hom_dim(x, y);
            let expected = expected_hom_dim(kind, n, b.algebra(), x, y);
            entries.push(HomEntry {
                source: labels[x].clone(),
                target: labels[y].clone(),
                dim,
                expected,
                matches: dim == expected,
            });
        }
    }
    let algebra = match kind {
        StarKind::Zigzag => "zigzag",
        StarKind::Quotient => "star",
    };
    let crosscheck = prime.map(|(p, seed)| hom_spaces_mod_p(b.catalog(), b.algebra().name(), p, seed, CROSSCHECK_SAMPLES));
    Ok(HomTable {
        algebra: algebra.into(),
        n,
        all_match: entries.iter().all(|e| e.matches),
        labels,
        entries,
        crosscheck,
    })
}

/// Rows of `[F_k]` and `[F_l]` agree exactly when `k` and `l` share a block.
fn rows_follow_blocks(p: &SetPartition, record: &ClassRecord) -> bool {
    let row_of = |k: usize| {
        let label = format!("F_{k}");
        record.action_matrices.iter().find(|(l, _)| *l == label).map(|(_, m)| m.clone())
    };
    (0..=p.n).all(|k| {
        (0..=p.n).all(|l| match (row_of(k), row_of(l)) {
            (Some(a), Some(b)) => (a == b) == (p.block_of[k] == p.block_of[l]),
            _ => false,
        })
    })
}

fn classify_one(p: &SetPartition, presentation_bound: usize, length_cap: usize) -> Result<(ClassRecord, Vec<String>), Error> {
    let mut record = classify_partition(p, &ClassifyOptions { presentation_bound: 0, length_cap })?;
    let mut failures = Vec::new();
    if p.n <= presentation_bound {
        let verdict = partition_colimit(p.n, &p.blocks, length_cap).and_then(|c| {
            if !c.category().completion().confluent_at_cap() {
                return Err(Error::Certification(format!("{p}: rewriting not confluent at cap {length_cap}")));
            }
            consistency_of(p, &c)
        });
        record.presentation_consistent = Some(verdict.is_ok());
        if let Err(e) = verdict {
            failures.push(format!("{p}: {e}"));
        }
    }
    if !record.simple_transitive {
        failures.push(format!("{p}: a proper stable ideal exists"));
    }
    if !rows_follow_blocks(p, &record) {
        failures.push(format!("{p}: action matrix rows do not follow the blocks"));
    }
    Ok((record, failures))
}

/// Per-partition work fanned out over `threads` workers; the merge keeps
/// the canonical partition order.
pub fn classify(
    n: usize,
    presentation_bound: usize,
    length_cap: usize,
    threads: usize,
    timings: &mut Vec<(String, std::time::Duration)>,
) -> Result<ClassifyReport, CliError> {
    let t = std::time::Instant::now();
    let parts = enumerate_partitions(n)?;
    timings.push(("enumerate partitions".into(), t.elapsed()));
    let t = std::time::Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let results: Vec<(ClassRecord, Vec<String>)> = pool.install(|| {
        parts
            .par_iter()
            .map(|p| classify_one(p, presentation_bound, length_cap))
            .collect::<Result<Vec<_>, Error>>()
    })?;
    timings.push(("models and certificates".into(), t.elapsed()));
    let t = std::time::Instant::now();
    let mut failures = Vec::new();
    let mut records = Vec::with_capacity(results.len());
    for (r, f) in results {
        records.push(r);
        failures.extend(f);
    }
    let report = assemble_report(n, records);
    if let Some((i, j)) = report.equivalent_pair {
        failures.push(format!(
            "{} and {} have permutation-equivalent action matrices",
            report.classes[i].partition, report.classes[j].partition
        ));
    }
    if report.classes.len() != parts.len() {
        failures.push(format!("{} classes for {} partitions", report.classes.len(), parts.len()));
    }
    timings.push(("pairwise inequivalence".into(), t.elapsed()));
    Ok(ClassifyReport {
        n,
        bell_number: report.bell_number,
        classes: report
            .classes
            .into_iter()
            .map(|c| ClassEntry {
                partition: c.partition.to_string(),
                base_algebra_rank: c.rank,
                action_matrices: c
                    .action_matrices
                    .into_iter()
                    .map(|(generator, matrix)| LabeledMatrix { generator, matrix })
                    .collect(),
                simple_transitive: c.simple_transitive,
                presentation_consistent: c.presentation_consistent,
            })
            .collect(),
        pairwise_inequivalent: report.pairwise_inequivalent,
        failures,
    })
}

fn describe_square(s: &Square) -> String {
    match s {
        Square::Action { generator, object } => format!("action square for {generator} on {object}"),
        Square::Naturality { source, target, basis } => format!("naturality against basis map {basis} of Hom({source}, {target})"),
    }
}

pub fn modcheck(n: usize, length_cap: usize) -> Result<ModcheckReport, Error> {
    let quotient = StarBicategory::new(n, StarKind::Quotient)?;
    let nm = subrep_n(&quotient)?;
    let labels = nm.catalog().labels().to_vec();
    let mut report = ModcheckReport {
        n,
        squares: Vec::new(),
        perturbations: Vec::new(),
        modification_spaces: Vec::new(),
        proportionality: Vec::new(),
        equification: Vec::new(),
        chi: Vec::new(),
        failures: Vec::new(),
    };
    let two = Q::from(2);
    for j in 1..=n {
        for k in 1..=n {
            let s = build_s_modification(&nm, j, k)?;
            let c = check_modification_axiom(&nm, &s);
            report.squares.push(SquareCheck {
                modification: s.label.clone(),
                squares: c.squares,
                holds: c.holds(),
                failure: c.failure.as_ref().map(describe_square),
            });
            for (x, label) in labels.iter().enumerate() {
                let c = check_modification_axiom(&nm, &s.perturbed(x, &two));
                report.perturbations.push(Perturbation {
                    modification: s.label.clone(),
                    object: label.clone(),
                    rejected: !c.holds(),
                    witness: c.failure.as_ref().map(describe_square),
                });
            }
            let space = modification_space(&nm, j, k)?;
            report.modification_spaces.push(SpaceDim { j, k, dim: space.len() });
            // A basis vector of the solution space must be a multiple of s.
            if let Some(m) = space.first() {
                let lambda = scalar_proportionality(&s, m);
                report.proportionality.push(Proportionality {
                    left: s.label.clone(),
                    right: format!("modification space basis ({j},{k})"),
                    expected: "nonzero".into(),
                    ok: lambda.as_ref().is_ok_and(|l| !l.is_zero()),
                    lambda: lambda.ok().map(|l| l.to_string()),
                });
            }
            for l in chi_samples() {
                let lambda = scalar_proportionality(&s, &s.scale(&l));
                report.proportionality.push(Proportionality {
                    left: s.label.clone(),
                    right: format!("{l}·{}", s.label),
                    expected: l.to_string(),
                    ok: lambda.as_ref() == Ok(&l),
                    lambda: lambda.ok().map(|x| x.to_string()),
                });
            }
        }
    }
    for p in enumerate_partitions(n)? {
        for (j, k) in index_pairs(&p.blocks) {
            let s = build_s_modification(&nm, j, k)?;
            let (model, sigma) = whisker_along_partition(&nm, &s, j, k, &p)?;
            for scale in chi_samples() {
                let mut tau = vec![Q::zero(); model.algebra.dim()];
                tau[model.algebra.idempotent(p.block_of[j])] = scale.clone();
                let t = extend_from_regular(&model, &p, j, &tau)?;
                let ok = scalar_proportionality(&sigma, &t).as_ref() == Ok(&scale)
                    && normalize_modification(&t, &sigma).is_ok_and(|m| m.components == sigma.components);
                report.equification.push(Equification { partition: p.to_string(), j, k, scale: scale.to_string(), ok });
            }
        }
    }
    let cat = projectives(n, length_cap)?;
    let ones = vec![Q::one(); n];
    for p in enumerate_partitions(n)? {
        for chi_f in chi_samples() {
            let f = scaled_functor(&cat, &p, &vec![chi_f.clone(); n], &ones, &chi_f)?;
            for chi_g in chi_samples() {
                // the same χ is split the other way round, so equal χ still
                // needs a nontrivial transformation
                let g = scaled_functor(&cat, &p, &ones, &vec![chi_g.clone(); n], &chi_g)?;
                let nt = natural_transformations(&cat, &f, &g)?;
                let read = chi_invariant(&cat, &f)? == chi_f && chi_invariant(&cat, &g)? == chi_g;
                report.chi.push(ChiCheck {
                    partition: p.to_string(),
                    chi_f: chi_f.to_string(),
                    chi_g: chi_g.to_string(),
                    invertible_transformation: nt.invertible_exists,
                    ok: read && nt.invertible_exists == (chi_f == chi_g),
                });
            }
        }
    }
    for s in report.squares.iter().filter(|s| !s.holds) {
        report.failures.push(format!("{}: {}", s.modification, s.failure.as_deref().unwrap_or("?")));
    }
    for p in report.perturbations.iter().filter(|p| !p.rejected) {
        report.failures.push(format!("{} perturbed at {} still passes", p.modification, p.object));
    }
    Ok(report)
}

fn presentation_of(cat: &PresentedCategory) -> Presentation {
    let objects = cat.objects().to_vec();
    let generators = cat
        .generators()
        .iter()
        .filter(|g| !g.formal_inverse)
        .map(|g| GeneratorEntry {
            name: g.name.clone(),
            src: objects[g.source].clone(),
            tgt: objects[g.target].clone(),
            invertible: g.inverse.is_some(),
        })
        .collect();
    let relations = cat.relations().iter().map(|r| cat.format(r)).collect();
    Presentation { objects, generators, relations }
}

pub const DEMO_POWERS: usize = 10;

pub fn counterexample(length_cap: usize) -> Result<CounterexampleReport, Error> {
    let demo = arrow_coequalizer(length_cap)?;
    let cat = &demo.colimit.category;
    let x = cat.generator_morphism(0);
    let mut acc = Morphism::identity(0);
    let mut powers = Vec::with_capacity(DEMO_POWERS);
    for m in 1..=DEMO_POWERS {
        acc = cat.compose(&acc, &x)?;
        let (t, f) = truncation(&demo, m + 1)?;
        let img = t.normal_form(&f.apply(&t, &acc)?)?;
        powers.push(PowerRow { m, normal_form: cat.format(&acc), survives_truncation: !img.is_zero() });
    }
    let mut forms: Vec<&str> = powers.iter().map(|p| p.normal_form.as_str()).collect();
    forms.sort_unstable();
    forms.dedup();
    let end = cat.hom_basis_bounded(0, 0, length_cap);
    Ok(CounterexampleReport {
        length_cap,
        presentation: presentation_of(cat),
        distinct_normal_forms: forms.len(),
        powers,
        end_by_length: end.by_length,
        end_saturated: end.saturated,
    })
}

/// On-disk form of a quiver presentation. Paths list arrow labels in
/// composition order, so `["b1", "a1"]` is `b1 ∘ a1`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PresentationFile {
    pub name: String,
    pub vertices: usize,
    pub arrows: Vec<ArrowEntry>,
    pub relations: Vec<Vec<RelationTerm>>,
    pub nilpotency: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ArrowEntry {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RelationTerm {
    pub coefficient: String,
    pub path: Vec<String>,
}

/// The bundled presentation of the three-vertex algebra `B`.
pub const ALGEBRA_B: &str = include_str!("../data/algebra_b.json");

impl PresentationFile {
    pub fn parse(text: &str) -> Result<PresentationFile, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("presentation file: {e}")))
    }

    pub fn build(&self) -> Result<FiniteDimAlgebra, Error> {
        let arrows = self.arrows.iter().map(|a| Arrow::new(&a.label, a.source, a.target)).collect();
        let quiver = Quiver::new(self.vertices, arrows)?;
        let mut relations = Vec::with_capacity(self.relations.len());
        for rel in &self.relations {
            let mut terms = Vec::with_capacity(rel.len());
            for t in rel {
                let c: Q = t
                    .coefficient
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad coefficient {:?}", t.coefficient)))?;
                let labels: Vec<&str> = t.path.iter().map(String::as_str).collect();
                terms.push((c, quiver.word_from_labels(&labels)?));
            }
            relations.push(Relation { terms });
        }
        algebra_from_presentation(&AlgebraPresentation::new(&self.name, quiver, relations, self.nilpotency)?)
    }
}

fn verdict(v: NaturalityVerdict) -> Verdict {
    match v {
        NaturalityVerdict::Passes => {
            Verdict { passes: true, element: None, multiplier: None, along_top: None, along_bottom: None }
        }
        NaturalityVerdict::Fails { element, multiplier, along_top, along_bottom } => Verdict {
            passes: false,
            element: Some(element),
            multiplier: Some(multiplier),
            along_top: Some(along_top),
            along_bottom: Some(along_bottom),
        },
    }
}

pub fn naturality(file: &PresentationFile, star_n: usize) -> Result<NaturalityReport, Error> {
    let b = file.build()?;
    let psi = QuiverAutomorphism::swap(&b, 1, 2);
    let v = naturality_counterexample(&b, &psi, 1)?;
    let identity_passes = naturality_counterexample(&b, &QuiverAutomorphism::identity(&b), 1)? == NaturalityVerdict::Passes;
    let mut star_swaps = Vec::new();
    for n in 1..=star_n {
        let a = build_star_quotient(n)?;
        for i in 1..=n {
            for j in i + 1..=n {
                let psi = QuiverAutomorphism::swap(&a, i, j);
                let passes = naturality_counterexample(&a, &psi, i)? == NaturalityVerdict::Passes
                    && naturality_counterexample(&a, &psi, j)? == NaturalityVerdict::Passes;
                star_swaps.push(LeafSwap { n, i, j, passes });
            }
        }
    }
    Ok(NaturalityReport {
        algebra: b.name().to_string(),
        dim: b.dim(),
        swapped: (1, 2),
        verdict: verdict(v),
        identity_passes,
        star_swaps,
    })
}

/// Reads `{0}{1,2}{3}` or `0|1,2|3`.
pub fn parse_partition(n: usize, s: &str) -> Result<SetPartition, CliError> {
    let cleaned = s.replace('}', "|").replace('{', "");
    let mut blocks = Vec::new();
    for part in cleaned.split('|').map(str::trim).filter(|p| !p.is_empty()) {
        let block = part
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad partition entry {x:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        blocks.push(block);
    }
    SetPartition::new(n, &blocks).map_err(|e| CliError::Usage(format!("partition {s:?}: {e}")))
}

pub fn colimit(p: &SetPartition, length_cap: usize) -> Result<ColimitReport, Error> {
    let c = partition_colimit(p.n, &p.blocks, length_cap)?;
    let cat = c.category();
    let env = additive_karoubi_envelope(cat)?;
    let consistency = consistency_of(p, &c);
    Ok(ColimitReport {
        n: p.n,
        partition: p.to_string(),
        presentation: presentation_of(cat),
        rewrite_rules: cat.rule_count(),
        confluent_at_cap: cat.completion().confluent_at_cap(),
        envelope_classes: env.class_count(),
        hom_dims: match &consistency {
            Ok(r) => r.hom_dims.clone(),
            Err(_) => env.hom_dims.clone(),
        },
        consistent: consistency.is_ok(),
        witness: consistency.err().map(|e| e.to_string()),
    })
}

/// Default partition for the colimit demo: every leaf in one block.
pub fn merged_partition(n: usize) -> SetPartition {
    SetPartition::new(n, &[vec![0], (1..=n).collect()]).expect("valid partition")
}
