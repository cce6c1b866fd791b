//! One line per acceptance criterion. Every bound below is exact; the time
//! limits are wall-clock budgets for the test build.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use starcat::report::Verdict;
use starcat::suites::{self, PresentationFile, ALGEBRA_B};
use starcat_core::bicategory::{
    build_biideal_i, ev_ideal, f_index, quotient_dimension_identity, subrep_n, verify_biideal, Birepresentation,
    StarBicategory, StarKind, REG,
};
use starcat_core::classification::{
    build_cwr_model, build_s_modification, check_modification_axiom, consistency_of, enumerate_partitions,
    functors_agree, refinement_transformation, simple_transitive_check,
};
use starcat_core::presented::star::partition_colimit;
use starcat_core::presented::{additive_karoubi_envelope, DEFAULT_LENGTH_CAP};
use starcat_core::quiver::{build_star_quotient, build_zigzag};
use starcat_core::{Field, Q};

const CAP: usize = DEFAULT_LENGTH_CAP;

const LIMIT_HOM_TABLES: Duration = Duration::from_secs(5);
const LIMIT_ALGEBRA_DIMS: Duration = Duration::from_secs(1);
const LIMIT_BIIDEAL: Duration = Duration::from_secs(5);
const LIMIT_COLIMITS: Duration = Duration::from_secs(60);
const LIMIT_COUNTEREXAMPLE: Duration = Duration::from_secs(1);
const LIMIT_SIMPLE_TRANSITIVE: Duration = Duration::from_secs(120);
const LIMIT_CLASSIFY_FIVE: Duration = Duration::from_secs(600);

/// Bell numbers for n = 1..5.
const BELL: [usize; 5] = [1, 2, 5, 15, 52];
/// Powers of the free loop that must have distinct normal forms.
const MIN_DISTINCT_POWERS: usize = 10;

type Outcome = Result<String, String>;

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let mut r = f();
    let took = t.elapsed();
    if let (Ok(msg), Some(limit)) = (&r, limit) {
        if took > limit {
            r = Err(format!("{msg}; took {took:.2?}, limit {limit:?}"));
        }
    }
    (r, took)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn hom_tables() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=5 {
        let z = StarBicategory::new(n, StarKind::Zigzag).map_err(err)?;
        let a = StarBicategory::new(n, StarKind::Quotient).map_err(err)?;
        let mut check = |name: &str, got: usize, want: usize| {
            if got != want {
                bad.push(format!("{name} n={n}: {got}, expected {want}"));
            }
        };
        check("End(Λ)", z.hom_dim(REG, REG), n + 2);
        check("End(A)", a.hom_dim(REG, REG), 2);
        for j in 0..=n {
            check(&format!("Hom(Λ, F_{j})"), z.hom_dim(REG, f_index(j)), 2);
            check(&format!("Hom(A, F_{j})"), a.hom_dim(REG, f_index(j)), if j == 0 { 2 } else { 1 });
        }
    }
    if bad.is_empty() {
        Ok("all tabulated entries match for n = 1..5".into())
    } else {
        Err(format!("{} mismatches, first: {}", bad.len(), bad[0]))
    }
}

/// Nonzero path classes of the star quiver, enumerated by hand.
fn path_count(n: usize, leaf_loops: bool) -> usize {
    let mut classes: BTreeSet<String> = BTreeSet::new();
    for v in 0..=n {
        classes.insert(format!("e{v}"));
    }
    for k in 1..=n {
        classes.insert(format!("a{k}"));
        classes.insert(format!("b{k}"));
        // 0 → k → 0 all coincide; k → 0 → k survives only in Λ
        classes.insert("c".into());
        if leaf_loops {
            classes.insert(format!("c{k}"));
        }
    }
    classes.len()
}

fn algebra_dims() -> Outcome {
    for n in 1..=8 {
        let (z, a) = (build_zigzag(n).map_err(err)?.dim(), build_star_quotient(n).map_err(err)?.dim());
        if z != 4 * n + 2 || z != path_count(n, true) {
            return Err(format!("dim Λ_{n} = {z}, expected {}", 4 * n + 2));
        }
        if a != 3 * n + 2 || a != path_count(n, false) {
            return Err(format!("dim A_{n} = {a}, expected {}", 3 * n + 2));
        }
    }
    Ok("dim Λ_n = 4n+2 and dim A_n = 3n+2 for n ≤ 8".into())
}

fn biideal() -> Outcome {
    for n in 1..=4 {
        let z = StarBicategory::new(n, StarKind::Zigzag).map_err(err)?;
        let i = build_biideal_i(&z).map_err(err)?;
        let cert = verify_biideal(&z, &i).map_err(err)?;
        if !cert.ok {
            return Err(format!("n={n}: {}", cert.witness.unwrap_or_default()));
        }
        let deg = z.nilpotency_degree(&i, 8);
        if deg != Some(2) {
            return Err(format!("n={n}: nilpotency degree {deg:?}, expected 2"));
        }
    }
    Ok("verified, nilpotency degree 2 for n ≤ 4".into())
}

fn dimension_identity() -> Outcome {
    let mut rows = 0;
    for n in 1..=5 {
        let z = StarBicategory::new(n, StarKind::Zigzag).map_err(err)?;
        let a = StarBicategory::new(n, StarKind::Quotient).map_err(err)?;
        for r in quotient_dimension_identity(&z, &a).map_err(err)? {
            if !r.holds() {
                return Err(format!(
                    "n={n} ({}, {}): {} vs {} + {}",
                    r.source, r.target, r.hom_zigzag, r.hom_quotient, r.ideal
                ));
            }
            rows += 1;
        }
    }
    Ok(format!("{rows} indecomposable pairs for n ≤ 5"))
}

fn annihilation() -> Outcome {
    for n in 1..=4 {
        let z = StarBicategory::new(n, StarKind::Zigzag).map_err(err)?;
        let i = build_biideal_i(&z).map_err(err)?;
        if !ev_ideal(&Birepresentation::cell(&z).map_err(err)?, &z, &i).map_err(err)?.is_zero() {
            return Err(format!("n={n}: ev on the cell birepresentation is nonzero"));
        }
        if ev_ideal(&Birepresentation::defining(&z).map_err(err)?, &z, &i).map_err(err)?.is_zero() {
            return Err(format!("n={n}: ev on the defining representation is zero"));
        }
    }
    Ok("ev(cell) = 0 and ev(defining) ≠ 0 for n ≤ 4".into())
}

/// `dim e_v A_r e_w` for the star quotient.
fn peirce(v: usize, w: usize) -> usize {
    match (v, w) {
        (0, 0) => 2,
        (0, _) | (_, 0) => 1,
        (v, w) if v == w => 1,
        _ => 0,
    }
}

fn colimits() -> Outcome {
    let mut count = 0;
    for n in 1..=3 {
        for p in enumerate_partitions(n).map_err(err)? {
            let c = partition_colimit(n, &p.blocks, CAP).map_err(err)?;
            let cat = c.category();
            if !cat.completion().confluent_at_cap() {
                return Err(format!("{p}: rewriting not confluent at cap {CAP}"));
            }
            for j in 0..cat.objects().len() {
                for k in 0..cat.objects().len() {
                    match cat.hom_basis(j, k) {
                        Ok(h) if h.saturated => {}
                        _ => return Err(format!("{p}: Hom(P{j}, P{k}) does not saturate")),
                    }
                }
            }
            let r = p.rank();
            let env = additive_karoubi_envelope(cat).map_err(err)?;
            if env.class_count() != r + 1 {
                return Err(format!("{p}: {} indecomposables, expected {}", env.class_count(), r + 1));
            }
            let report = consistency_of(&p, &c).map_err(|e| format!("{p}: {e}"))?;
            for v in 0..=r {
                for w in 0..=r {
                    if report.hom_dims[v][w] != peirce(v, w) || report.model_hom_dims[v][w] != peirce(v, w) {
                        return Err(format!("{p}: Hom(P{v}, P{w}) = {}, expected {}", report.hom_dims[v][w], peirce(v, w)));
                    }
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} partitions, confluent, saturated, envelope ≃ A_r-proj"))
}

fn counterexample() -> Outcome {
    let r = suites::counterexample(CAP).map_err(err)?;
    if r.distinct_normal_forms < MIN_DISTINCT_POWERS {
        return Err(format!("{} distinct powers", r.distinct_normal_forms));
    }
    if r.end_saturated {
        return Err("End(X) reported saturated".into());
    }
    Ok(format!("{} distinct normal forms x^m, End(X) not saturated at cap {CAP}", r.distinct_normal_forms))
}

fn modifications() -> Outcome {
    let scalars = [Q::from(2), Q::from(-1), Q::new(1, 2), Q::zero()];
    let mut perturbed = 0;
    for n in 1..=3 {
        let nm = subrep_n(&StarBicategory::new(n, StarKind::Quotient).map_err(err)?).map_err(err)?;
        for j in 1..=n {
            for k in 1..=n {
                let s = build_s_modification(&nm, j, k).map_err(err)?;
                let c = check_modification_axiom(&nm, &s);
                if !c.holds() {
                    return Err(format!("n={n}: {} fails: {:?}", s.label, c.failure));
                }
                for x in 0..nm.catalog().len() {
                    for l in &scalars {
                        let c = check_modification_axiom(&nm, &s.perturbed(x, l));
                        if c.holds() || c.failure.is_none() {
                            return Err(format!("n={n}: {} scaled by {l} at object {x} is accepted", s.label));
                        }
                        perturbed += 1;
                    }
                }
            }
        }
    }
    Ok(format!("all s_(j,k) pass for n ≤ 3; {perturbed} perturbations rejected with a witness"))
}

fn scalar_uniqueness() -> Outcome {
    let mut pairs = 0;
    for n in 1..=3 {
        let r = suites::modcheck(n, CAP).map_err(err)?;
        if let Some(p) = r.proportionality.iter().find(|p| !p.ok) {
            return Err(format!("n={n}: {} vs {}: λ = {:?}, expected {}", p.left, p.right, p.lambda, p.expected));
        }
        if let Some(e) = r.equification.iter().find(|e| !e.ok) {
            return Err(format!("n={n}: equified modification on {} ({},{}) scale {}", e.partition, e.j, e.k, e.scale));
        }
        if let Some(c) = r.chi.iter().find(|c| !c.ok) {
            return Err(format!(
                "n={n} {}: χ {} vs {}: invertible transformation {}",
                c.partition, c.chi_f, c.chi_g, c.invertible_transformation
            ));
        }
        if r.chi.iter().any(|c| c.invertible_transformation && c.chi_f != c.chi_g) {
            return Err(format!("n={n}: distinct χ admit an invertible transformation"));
        }
        pairs += r.proportionality.len() + r.chi.len();
    }
    Ok(format!("{pairs} pairs for n ≤ 3, χ ∈ {{1, 2, -1, 1/2}}"))
}

fn simple_transitivity() -> Outcome {
    let parts = enumerate_partitions(4).map_err(err)?;
    if parts.len() != BELL[3] {
        return Err(format!("{} partitions of the leaves for n = 4", parts.len()));
    }
    let mut models = 0;
    for n in 1..=4 {
        for p in enumerate_partitions(n).map_err(err)? {
            let rep = simple_transitive_check(&build_cwr_model(&p).map_err(err)?.model);
            if !rep.is_simple_transitive() {
                return Err(format!("{p}: {} proper stable ideals", rep.proper_ideals.len()));
            }
            models += 1;
        }
    }
    for n in 1..=4 {
        let nm = subrep_n(&StarBicategory::new(n, StarKind::Quotient).map_err(err)?).map_err(err)?;
        let rep = simple_transitive_check(&nm);
        if !rep.transitive || rep.proper_ideals.len() != 1 {
            return Err(format!("n={n}: N has {} proper nonzero stable ideals", rep.proper_ideals.len()));
        }
    }
    Ok(format!("{models} models simple transitive (15 at n = 4); N has exactly one proper ideal for n ≤ 4"))
}

fn bijection() -> Outcome {
    let mut t5 = Duration::ZERO;
    for n in 1..=5 {
        let t = Instant::now();
        let mut timings = Vec::new();
        let r = suites::classify(n, 3, CAP, 4, &mut timings).map_err(err)?;
        if n == 5 {
            t5 = t.elapsed();
        }
        if r.classes.len() != BELL[n - 1] || r.bell_number != BELL[n - 1] {
            return Err(format!("n={n}: {} classes, expected {}", r.classes.len(), BELL[n - 1]));
        }
        if !r.pairwise_inequivalent || !r.failures.is_empty() {
            return Err(format!("n={n}: {:?}", r.failures));
        }
        let parts: Vec<String> = enumerate_partitions(n).map_err(err)?.iter().map(|p| p.to_string()).collect();
        let named: Vec<String> = r.classes.iter().map(|c| c.partition.clone()).collect();
        if parts != named {
            return Err(format!("n={n}: classes are not matched to the partitions"));
        }
    }
    if t5 > LIMIT_CLASSIFY_FIVE {
        return Err(format!("n = 5 took {t5:.2?}"));
    }
    Ok(format!("1, 2, 5, 15, 52 classes for n = 1..5 (n = 5 in {t5:.2?})"))
}

fn refinement() -> Outcome {
    let mut chains = 0;
    for n in 1..=4 {
        let parts = enumerate_partitions(n).map_err(err)?;
        let cs = parts.iter().map(|p| partition_colimit(n, &p.blocks, CAP)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        for (a, pa) in parts.iter().enumerate() {
            for (b, pb) in parts.iter().enumerate().filter(|(_, pb)| pa.is_finer_than(pb)) {
                let fab = refinement_transformation(&cs[a], &cs[b]).map_err(err)?;
                for (c, pc) in parts.iter().enumerate().filter(|(_, pc)| pb.is_finer_than(pc)) {
                    let fbc = refinement_transformation(&cs[b], &cs[c]).map_err(err)?;
                    let fac = refinement_transformation(&cs[a], &cs[c]).map_err(err)?;
                    let comp = fab.then(&fbc, cs[c].category()).map_err(err)?;
                    if !functors_agree(cs[a].category(), cs[c].category(), &comp, &fac).map_err(err)? {
                        return Err(format!("{pa} ≤ {pb} ≤ {pc}: composite differs from the direct map"));
                    }
                    chains += 1;
                }
            }
        }
    }
    Ok(format!("{chains} chains for n ≤ 4"))
}

fn negative_example() -> Outcome {
    let file = PresentationFile::parse(ALGEBRA_B).map_err(err)?;
    let r = suites::naturality(&file, 4).map_err(err)?;
    let Verdict { passes, along_top, along_bottom, .. } = &r.verdict;
    let pair: BTreeSet<&str> = [along_top.as_deref(), along_bottom.as_deref()].into_iter().flatten().collect();
    let want: BTreeSet<&str> = ["b1a1b2", "b2a2b2"].into();
    if *passes || pair != want {
        return Err(format!("B: passes={passes}, pair {pair:?}"));
    }
    if let Some(s) = r.star_swaps.iter().find(|s| !s.passes) {
        return Err(format!("A_{}: swap ({},{}) fails", s.n, s.i, s.j));
    }
    Ok(format!("B fails with (b1a1b2, b2a2b2); {} leaf swaps on A_1..A_4 pass", r.star_swaps.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 13] = [
        ("Hom tables", Some(LIMIT_HOM_TABLES), hom_tables),
        ("algebra dimensions", Some(LIMIT_ALGEBRA_DIMS), algebra_dims),
        ("biideal", Some(LIMIT_BIIDEAL), biideal),
        ("dimension identity", None, dimension_identity),
        ("annihilation", None, annihilation),
        ("colimit presentations", Some(LIMIT_COLIMITS), colimits),
        ("infinite-Hom counterexample", Some(LIMIT_COUNTEREXAMPLE), counterexample),
        ("modifications", None, modifications),
        ("scalar uniqueness", None, scalar_uniqueness),
        ("simple transitivity", Some(LIMIT_SIMPLE_TRANSITIVE), simple_transitivity),
        ("bijection", None, bijection),
        ("refinement functoriality", None, refinement),
        ("negative example", None, negative_example),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let (r, took) = timed(limit, f);
        match r {
            Ok(msg) => println!("criterion {:>2} PASS {name}: {msg} ({took:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {msg} ({took:.2?})", i + 1);
            }
        }
    }
    println!("{} of 13 criteria passed", 13 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
