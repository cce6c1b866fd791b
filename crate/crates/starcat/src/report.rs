//! Report types. Every report serializes to JSON without timings, so two
//! runs with the same configuration produce identical bytes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub prime: u64,
    pub seed: u64,
    pub hom_spaces: usize,
    /// random combinations tested for the intertwining property
    pub samples: usize,
    pub failures: Vec<String>,
}

impl CrossCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct IdealComponent {
    pub source: String,
    pub target: String,
    pub dim: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DimensionEntry {
    pub source: String,
    pub target: String,
    pub hom_zigzag: usize,
    pub hom_quotient: usize,
    pub ideal: usize,
    pub holds: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: usize,
    pub zigzag_dim: usize,
    pub star_dim: usize,
    pub biideal_ok: bool,
    pub biideal_components: Vec<IdealComponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub biideal_witness: Option<String>,
    pub nilpotency_degree: Option<usize>,
    pub dim_identity_ok: bool,
    pub dim_identity: Vec<DimensionEntry>,
    pub ev_cell_zero: bool,
    pub ev_defining_nonzero: bool,
    pub cell_simple_transitive: bool,
    pub subrep_ideal_dim: usize,
    pub subrep_unique_ideal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crosscheck: Option<CrossCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.zigzag_dim == 4 * self.n + 2
            && self.star_dim == 3 * self.n + 2
            && self.biideal_ok
            && self.nilpotency_degree == Some(2)
            && self.dim_identity_ok
            && self.ev_cell_zero
            && self.ev_defining_nonzero
            && self.cell_simple_transitive
            && self.subrep_unique_ideal
            && self.crosscheck.as_ref().map_or(true, CrossCheck::ok)
    }

    fn witness(&self) -> Option<String> {
        if let Some(w) = &self.biideal_witness {
            return Some(format!("biideal: {w}"));
        }
        if let Some(r) = self.dim_identity.iter().find(|r| !r.holds) {
            return Some(format!(
                "dimension identity at ({}, {}): {} != {} + {}",
                r.source, r.target, r.hom_zigzag, r.hom_quotient, r.ideal
            ));
        }
        self.crosscheck.as_ref().and_then(|c| c.failures.first().cloned())
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct HomEntry {
    pub source: String,
    pub target: String,
    pub dim: usize,
    pub expected: usize,
    pub matches: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct HomTable {
    pub algebra: String,
    pub n: usize,
    pub labels: Vec<String>,
    /// row-major, `Hom(source, target)`
    pub entries: Vec<HomEntry>,
    pub all_match: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crosscheck: Option<CrossCheck>,
}

impl HomTable {
    pub fn passed(&self) -> bool {
        self.all_match && self.crosscheck.as_ref().map_or(true, CrossCheck::ok)
    }

    pub fn dim(&self, source: &str, target: &str) -> Option<usize> {
        self.entries.iter().find(|e| e.source == source && e.target == target).map(|e| e.dim)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LabeledMatrix {
    pub generator: String,
    pub matrix: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ClassEntry {
    pub partition: String,
    pub base_algebra_rank: usize,
    pub action_matrices: Vec<LabeledMatrix>,
    pub simple_transitive: bool,
    pub presentation_consistent: Option<bool>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ClassifyReport {
    pub n: usize,
    pub bell_number: usize,
    pub classes: Vec<ClassEntry>,
    pub pairwise_inequivalent: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl ClassifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.pairwise_inequivalent
            && self.bell_number == self.classes.len()
            && self.classes.iter().all(|c| c.simple_transitive && c.presentation_consistent != Some(false))
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SquareCheck {
    pub modification: String,
    pub squares: usize,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Perturbation {
    pub modification: String,
    pub object: String,
    pub rejected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SpaceDim {
    pub j: usize,
    pub k: usize,
    pub dim: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Proportionality {
    pub left: String,
    pub right: String,
    pub expected: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    pub ok: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Equification {
    pub partition: String,
    pub j: usize,
    pub k: usize,
    pub scale: String,
    pub ok: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ChiCheck {
    pub partition: String,
    pub chi_f: String,
    pub chi_g: String,
    pub invertible_transformation: bool,
    pub ok: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ModcheckReport {
    pub n: usize,
    pub squares: Vec<SquareCheck>,
    pub perturbations: Vec<Perturbation>,
    pub modification_spaces: Vec<SpaceDim>,
    pub proportionality: Vec<Proportionality>,
    pub equification: Vec<Equification>,
    pub chi: Vec<ChiCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl ModcheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.squares.iter().all(|s| s.holds)
            && self.perturbations.iter().all(|p| p.rejected)
            && self.modification_spaces.iter().all(|s| s.dim == 1)
            && self.proportionality.iter().all(|p| p.ok)
            && self.equification.iter().all(|e| e.ok)
            && self.chi.iter().all(|c| c.ok)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PowerRow {
    pub m: usize,
    pub normal_form: String,
    /// `x^m` survives in `𝕜[y]/(y^{m+1})`
    pub survives_truncation: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub length_cap: usize,
    pub presentation: Presentation,
    pub powers: Vec<PowerRow>,
    pub distinct_normal_forms: usize,
    /// basis words of `End(X)` per length, up to the cap
    pub end_by_length: Vec<usize>,
    pub end_saturated: bool,
}

impl CounterexampleReport {
    pub fn passed(&self) -> bool {
        self.distinct_normal_forms >= 10 && !self.end_saturated && self.powers.iter().all(|p| p.survives_truncation)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub passes: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub along_top: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub along_bottom: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LeafSwap {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub passes: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct NaturalityReport {
    pub algebra: String,
    pub dim: usize,
    pub swapped: (usize, usize),
    pub verdict: Verdict,
    pub identity_passes: bool,
    pub star_swaps: Vec<LeafSwap>,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        !self.verdict.passes && self.identity_passes && self.star_swaps.iter().all(|s| s.passes)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GeneratorEntry {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub invertible: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub objects: Vec<String>,
    pub generators: Vec<GeneratorEntry>,
    /// each relation reads `expression = 0`
    pub relations: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ColimitReport {
    pub n: usize,
    pub partition: String,
    pub presentation: Presentation,
    pub rewrite_rules: usize,
    pub confluent_at_cap: bool,
    pub envelope_classes: usize,
    pub hom_dims: Vec<Vec<usize>>,
    pub consistent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ColimitReport {
    pub fn passed(&self) -> bool {
        self.confluent_at_cap && self.consistent
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Verify(VerifyReport),
    Homtable(HomTable),
    Classify(ClassifyReport),
    Modcheck(ModcheckReport),
    Counterexample(CounterexampleReport),
    Naturality(NaturalityReport),
    Colimit(ColimitReport),
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Verify(r) => r.passed(),
            Report::Homtable(r) => r.passed(),
            Report::Classify(r) => r.passed(),
            Report::Modcheck(r) => r.passed(),
            Report::Counterexample(r) => r.passed(),
            Report::Naturality(r) => r.passed(),
            Report::Colimit(r) => r.passed(),
        }
    }

    /// The first failing certificate, if any.
    pub fn witness(&self) -> Option<String> {
        if self.passed() {
            return None;
        }
        let w = match self {
            Report::Verify(r) => r.witness(),
            Report::Homtable(r) => r.entries.iter().find(|e| !e.matches).map(|e| {
                format!("Hom({}, {}) = {}, expected {}", e.source, e.target, e.dim, e.expected)
            }),
            Report::Classify(r) => r.failures.first().cloned(),
            Report::Modcheck(r) => r.failures.first().cloned().or_else(|| {
                r.squares.iter().find(|s| !s.holds).and_then(|s| s.failure.clone())
            }),
            Report::Counterexample(_) => Some("End(X) saturated or fewer than 10 distinct powers".into()),
            Report::Naturality(r) => r
                .star_swaps
                .iter()
                .find(|s| !s.passes)
                .map(|s| format!("leaf swap {}↔{} fails on A_{}", s.i, s.j, s.n)),
            Report::Colimit(r) => r.witness.clone(),
        };
        Some(w.unwrap_or_else(|| "see report".into()))
    }

    pub fn to_json(&self) -> String {
        let v = match self {
            Report::Verify(r) => serde_json::to_string_pretty(r),
            Report::Homtable(r) => serde_json::to_string_pretty(r),
            Report::Classify(r) => serde_json::to_string_pretty(r),
            Report::Modcheck(r) => serde_json::to_string_pretty(r),
            Report::Counterexample(r) => serde_json::to_string_pretty(r),
            Report::Naturality(r) => serde_json::to_string_pretty(r),
            Report::Colimit(r) => serde_json::to_string_pretty(r),
        };
        let mut s = v.expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Verify(r) => verify_text(&mut s, r),
            Report::Homtable(r) => homtable_text(&mut s, r),
            Report::Classify(r) => classify_text(&mut s, r),
            Report::Modcheck(r) => modcheck_text(&mut s, r),
            Report::Counterexample(r) => counterexample_text(&mut s, r),
            Report::Naturality(r) => naturality_text(&mut s, r),
            Report::Colimit(r) => colimit_text(&mut s, r),
        }
        let _ = writeln!(s, "{}", if self.passed() { "ALL CERTIFICATES PASSED" } else { "CERTIFICATION FAILED" });
        if let Some(w) = self.witness() {
            let _ = writeln!(s, "witness: {w}");
        }
        s
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

fn crosscheck_text(s: &mut String, c: &Option<CrossCheck>) {
    if let Some(c) = c {
        let _ = writeln!(
            s,
            "mod {} cross-check (seed {}): {} Hom spaces, {} samples: {}",
            c.prime,
            c.seed,
            c.hom_spaces,
            c.samples,
            flag(c.ok())
        );
        for f in &c.failures {
            let _ = writeln!(s, "  {f}");
        }
    }
}

fn verify_text(s: &mut String, r: &VerifyReport) {
    let n = r.n;
    let _ = writeln!(s, "verify n = {n}");
    let _ = writeln!(s, "dim Lambda_{n} = {} (4n+2 = {})", r.zigzag_dim, 4 * n + 2);
    let _ = writeln!(s, "dim A_{n} = {} (3n+2 = {})", r.star_dim, 3 * n + 2);
    let comps: Vec<String> =
        r.biideal_components.iter().map(|c| format!("({},{}):{}", c.source, c.target, c.dim)).collect();
    let _ = writeln!(s, "biideal_ok: {} [{}]", r.biideal_ok, comps.join(" "));
    match r.nilpotency_degree {
        Some(d) => _ = writeln!(s, "nilpotency_degree = {d}"),
        None => _ = writeln!(s, "nilpotency_degree: not reached"),
    }
    let bad = r.dim_identity.iter().filter(|e| !e.holds).count();
    let _ = writeln!(s, "dim_identity_ok: {} ({} pairs, {bad} failing)", r.dim_identity_ok, r.dim_identity.len());
    let _ = writeln!(s, "ev_cell_zero: {}", r.ev_cell_zero);
    let _ = writeln!(s, "ev_defining_nonzero: {}", r.ev_defining_nonzero);
    let _ = writeln!(s, "cell_simple_transitive: {}", r.cell_simple_transitive);
    let _ = writeln!(s, "subrep N: maximal stable ideal of dim {}, unique: {}", r.subrep_ideal_dim, r.subrep_unique_ideal);
    crosscheck_text(s, &r.crosscheck);
}

fn homtable_text(s: &mut String, r: &HomTable) {
    let _ = writeln!(s, "Hom dimensions over {} n = {} (row = source, column = target)", r.algebra, r.n);
    let w = r.labels.iter().map(String::len).max().unwrap_or(3).max(6) + 1;
    let _ = write!(s, "{:w$}", "");
    for l in &r.labels {
        let _ = write!(s, "{l:>w$}");
    }
    s.push('\n');
    for (i, src) in r.labels.iter().enumerate() {
        let _ = write!(s, "{src:w$}");
        for e in &r.entries[i * r.labels.len()..(i + 1) * r.labels.len()] {
            let cell = if e.matches { e.dim.to_string() } else { format!("{}≠{}", e.dim, e.expected) };
            let _ = write!(s, "{cell:>w$}");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "closed form matches: {}", r.all_match);
    crosscheck_text(s, &r.crosscheck);
}

fn classify_text(s: &mut String, r: &ClassifyReport) {
    let _ = writeln!(s, "classify n = {}: {} classes", r.n, r.bell_number);
    for c in &r.classes {
        let pres = match c.presentation_consistent {
            Some(b) => flag(b),
            None => "-",
        };
        let _ = writeln!(
            s,
            "  {:<24} r = {}  simple transitive: {:<4}  presentation: {}",
            c.partition,
            c.base_algebra_rank,
            flag(c.simple_transitive),
            pres
        );
        for m in &c.action_matrices {
            if m.generator == "Reg" {
                continue;
            }
            let rows: Vec<String> =
                m.matrix.iter().map(|row| row.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")).collect();
            let _ = writeln!(s, "      [{}] = [{}]", m.generator, rows.join("; "));
        }
    }
    let _ = writeln!(s, "pairwise inequivalent: {}", r.pairwise_inequivalent);
    for f in &r.failures {
        let _ = writeln!(s, "  {f}");
    }
}

fn modcheck_text(s: &mut String, r: &ModcheckReport) {
    let _ = writeln!(s, "modcheck n = {}", r.n);
    for q in &r.squares {
        let _ = writeln!(s, "  {:<10} {} squares: {}", q.modification, q.squares, flag(q.holds));
    }
    let rejected = r.perturbations.iter().filter(|p| p.rejected).count();
    let _ = writeln!(s, "perturbed components rejected: {rejected}/{}", r.perturbations.len());
    let dims: Vec<String> = r.modification_spaces.iter().map(|d| format!("({},{}):{}", d.j, d.k, d.dim)).collect();
    let _ = writeln!(s, "modification space dims: {}", dims.join(" "));
    for p in &r.proportionality {
        let _ = writeln!(
            s,
            "  {} = λ·{}: λ = {} (expected {}) {}",
            p.right,
            p.left,
            p.lambda.as_deref().unwrap_or("none"),
            p.expected,
            flag(p.ok)
        );
    }
    for e in &r.equification {
        let _ = writeln!(s, "  normalize t' = {}·Σ∙s_{{{},{}}} on {}: {}", e.scale, e.j, e.k, e.partition, flag(e.ok));
    }
    for c in &r.chi {
        let _ = writeln!(
            s,
            "  χ {} vs {} on {}: invertible transformation {} {}",
            c.chi_f,
            c.chi_g,
            c.partition,
            c.invertible_transformation,
            flag(c.ok)
        );
    }
    for f in &r.failures {
        let _ = writeln!(s, "  {f}");
    }
}

fn presentation_text(s: &mut String, p: &Presentation) {
    let _ = writeln!(s, "objects: {}", p.objects.join(", "));
    for g in &p.generators {
        let inv = if g.invertible { " (invertible)" } else { "" };
        let _ = writeln!(s, "  {}: {} -> {}{inv}", g.name, g.src, g.tgt);
    }
    for rel in &p.relations {
        let _ = writeln!(s, "  {rel} = 0");
    }
}

fn counterexample_text(s: &mut String, r: &CounterexampleReport) {
    let _ = writeln!(s, "coequalizer of two arrows (1 -> 2) => (1 -> 2 -> 3)");
    presentation_text(s, &r.presentation);
    let _ = writeln!(s, "{:>3}  {:<24} {}", "m", "normal form", "nonzero in k[y]/(y^(m+1))");
    for p in &r.powers {
        let _ = writeln!(s, "{:>3}  {:<24} {}", p.m, p.normal_form, p.survives_truncation);
    }
    let _ = writeln!(s, "distinct normal forms: {}", r.distinct_normal_forms);
    let _ = writeln!(s, "End(X) words by length up to {}: {:?}", r.length_cap, r.end_by_length);
    let _ = writeln!(s, "End(X) saturated: {}", r.end_saturated);
}

fn naturality_text(s: &mut String, r: &NaturalityReport) {
    let _ = writeln!(s, "algebra {} of dimension {}, swapping vertices {} and {}", r.algebra, r.dim, r.swapped.0, r.swapped.1);
    if r.verdict.passes {
        let _ = writeln!(s, "naturality square commutes");
    } else {
        let _ = writeln!(
            s,
            "naturality fails at {} multiplied by {}: {} vs {}",
            r.verdict.element.as_deref().unwrap_or("?"),
            r.verdict.multiplier.as_deref().unwrap_or("?"),
            r.verdict.along_top.as_deref().unwrap_or("?"),
            r.verdict.along_bottom.as_deref().unwrap_or("?")
        );
    }
    let _ = writeln!(s, "identity automorphism passes: {}", r.identity_passes);
    let ok = r.star_swaps.iter().filter(|x| x.passes).count();
    let _ = writeln!(s, "leaf swaps on star algebras passing: {ok}/{}", r.star_swaps.len());
}

fn colimit_text(s: &mut String, r: &ColimitReport) {
    let _ = writeln!(s, "C^WR{} for n = {}", r.partition, r.n);
    presentation_text(s, &r.presentation);
    let _ = writeln!(s, "rewrite rules: {}, confluent at cap: {}", r.rewrite_rules, r.confluent_at_cap);
    let _ = writeln!(s, "envelope classes: {}, Hom dims {:?}", r.envelope_classes, r.hom_dims);
    let _ = writeln!(s, "agrees with the bimodule model: {}", r.consistent);
}
