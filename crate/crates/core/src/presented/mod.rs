//! Linear categories given by generators and relations.
//!
//! A morphism is a finite linear combination of composable words.  The word
//! `[g0, g1, …, gk]` stands for `g0 ∘ g1 ∘ … ∘ gk`, so `gk` is applied
//! first and the empty word is an identity.  Relations are oriented along
//! the length-lexicographic order, generators ranked by index with formal
//! inverses last, and completed by critical pairs up to a length cap.

mod envelope;
pub mod examples;
pub mod star;

pub use envelope::{additive_karoubi_envelope, Indecomposable, KaroubiEnvelope};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::{Field, Q};

pub type GenWord = Vec<usize>;
pub type Terms = BTreeMap<GenWord, Q>;

pub const DEFAULT_LENGTH_CAP: usize = 12;
const MAX_ROUNDS: usize = 32;
const MAX_RULES: usize = 4_000;
const REDUCTION_STEPS: usize = 2_000_000;
const ENUMERATION_LIMIT: usize = 400_000;

/// Length first, then lexicographic in generator rank.
pub fn word_order(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn contains(hay: &[usize], needle: &[usize]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

fn add_term(terms: &mut Terms, w: GenWord, c: Q) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&w) {
        Some(x) => {
            *x = x.clone() + &c;
            if x.is_zero() {
                terms.remove(&w);
            }
        }
        None => {
            terms.insert(w, c);
        }
    }
}

fn difference(a: &Terms, b: &Terms) -> Terms {
    let mut out = a.clone();
    for (w, c) in b {
        add_term(&mut out, w.clone(), -c.clone());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub inverse: Option<usize>,
    pub formal_inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub invertible: bool,
}

impl GeneratorSpec {
    pub fn new(name: &str, source: &str, target: &str) -> Self {
        GeneratorSpec { name: name.into(), source: source.into(), target: target.into(), invertible: false }
    }

    pub fn invertible(name: &str, source: &str, target: &str) -> Self {
        GeneratorSpec { invertible: true, ..Self::new(name, source, target) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub terms: Terms,
}

impl Morphism {
    pub fn zero(source: usize, target: usize) -> Self {
        Morphism { source, target, terms: Terms::new() }
    }

    pub fn identity(x: usize) -> Self {
        Self::word(x, x, Vec::new())
    }

    pub fn word(source: usize, target: usize, w: GenWord) -> Self {
        let mut terms = Terms::new();
        terms.insert(w, Q::one());
        Morphism { source, target, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_parallel(&self, o: &Morphism) -> Result<()> {
        if (self.source, self.target) != (o.source, o.target) {
            return Err(Error::InvalidInput(format!(
                "morphisms {}→{} and {}→{} are not parallel",
                self.source, self.target, o.source, o.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Morphism) -> Result<Morphism> {
        self.check_parallel(o)?;
        let mut terms = self.terms.clone();
        for (w, c) in &o.terms {
            add_term(&mut terms, w.clone(), c.clone());
        }
        Ok(Morphism { terms, ..*self })
    }

    pub fn sub(&self, o: &Morphism) -> Result<Morphism> {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Morphism {
        let mut terms = Terms::new();
        for (w, x) in &self.terms {
            add_term(&mut terms, w.clone(), x.clone() * c);
        }
        Morphism { terms, ..*self }
    }

    /// `self ∘ f`, without reducing.
    pub fn compose(&self, f: &Morphism) -> Result<Morphism> {
        if f.target != self.source {
            return Err(Error::InvalidInput(format!(
                "cannot compose {}→{} after {}→{}",
                self.source, self.target, f.source, f.target
            )));
        }
        let mut terms = Terms::new();
        for (u, x) in &self.terms {
            for (v, y) in &f.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                add_term(&mut terms, w, x.clone() * y);
            }
        }
        Ok(Morphism { source: f.source, target: self.target, terms })
    }

    /// Largest word with its coefficient.
    pub fn leading(&self) -> Option<(&GenWord, &Q)> {
        self.terms.iter().max_by(|a, b| word_order(a.0, b.0))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionReport {
    /// False when only the relations were inter-reduced, with no critical pairs examined.
    pub examined: bool,
    pub rounds: usize,
    pub critical_pairs: usize,
    /// Overlaps longer than the cap, never examined.
    pub skipped_overlaps: usize,
    /// Critical pairs within the cap that were still unresolved when completion stopped.
    pub unresolved: usize,
}

impl CompletionReport {
    pub fn confluent_at_cap(&self) -> bool {
        self.examined && self.unresolved == 0
    }
}

/// Irreducible words between two objects, enumerated up to a length bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBasis {
    pub source: usize,
    pub target: usize,
    pub words: Vec<GenWord>,
    /// Number of basis words of each length `0..=bound`.
    pub by_length: Vec<usize>,
    /// No new words at the last two lengths, and the enumeration was not truncated.
    pub saturated: bool,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.words.len()
    }
}

#[derive(Clone, Debug)]
pub struct PresentedCategory {
    objects: Vec<String>,
    generators: Vec<Generator>,
    declared: usize,
    relations: Vec<Morphism>,
    rules: BTreeMap<GenWord, Terms>,
    max_lhs: usize,
    length_cap: usize,
    report: CompletionReport,
}

impl PresentedCategory {
    /// The free linear category on a quiver of generators.  Every invertible
    /// generator gets a formal inverse, appended after all declared generators.
    pub fn free(objects: &[&str], generators: &[GeneratorSpec], length_cap: usize) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let find = |name: &str| {
            objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown object {name}")))
        };
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            gens.push((g.name.clone(), find(&g.source)?, find(&g.target)?, g.invertible));
        }
        Self::from_parts(objects, gens, Vec::new(), length_cap)
    }

    fn from_parts(
        objects: Vec<String>,
        declared: Vec<(String, usize, usize, bool)>,
        relations: Vec<Morphism>,
        length_cap: usize,
    ) -> Result<Self> {
        let mut cat = Self::uncompleted(objects, declared, relations, length_cap)?;
        cat.complete()?;
        Ok(cat)
    }

    fn uncompleted(
        objects: Vec<String>,
        declared: Vec<(String, usize, usize, bool)>,
        relations: Vec<Morphism>,
        length_cap: usize,
    ) -> Result<Self> {
        if length_cap < 2 {
            return Err(Error::InvalidInput("length cap must be at least 2".into()));
        }
        let m = declared.len();
        let mut generators: Vec<Generator> = declared
            .iter()
            .map(|(name, s, t, _)| Generator {
                name: name.clone(),
                source: *s,
                target: *t,
                inverse: None,
                formal_inverse: false,
            })
            .collect();
        for (i, (name, s, t, inv)) in declared.iter().enumerate() {
            if *s >= objects.len() || *t >= objects.len() {
                return Err(Error::InvalidInput(format!("generator {name} has an unknown endpoint")));
            }
            if *inv {
                let j = generators.len();
                generators[i].inverse = Some(j);
                generators.push(Generator {
                    name: format!("{name}⁻¹"),
                    source: *t,
                    target: *s,
                    inverse: Some(i),
                    formal_inverse: true,
                });
            }
        }
        let mut cat = PresentedCategory {
            objects,
            generators,
            declared: m,
            relations: Vec::new(),
            rules: BTreeMap::new(),
            max_lhs: 0,
            length_cap,
            report: CompletionReport::default(),
        };
        for r in &relations {
            cat.check_morphism(r)?;
        }
        cat.relations = relations;
        let mut pending: Vec<Terms> = Vec::new();
        for g in 0..m {
            if let Some(h) = cat.generators[g].inverse {
                let mut a = Terms::new();
                a.insert(vec![g, h], Q::one());
                a.insert(Vec::new(), -Q::one());
                let mut b = Terms::new();
                b.insert(vec![h, g], Q::one());
                b.insert(Vec::new(), -Q::one());
                pending.push(a);
                pending.push(b);
            }
        }
        pending.extend(cat.relations.iter().map(|r| r.terms.clone()));
        for p in pending {
            cat.insert_relation(p)?;
        }
        Ok(cat)
    }

    /// Runs (or reruns) completion of the rewriting rules up to the length cap.
    pub fn completed(&self) -> Result<Self> {
        let mut cat = self.clone();
        cat.complete()?;
        Ok(cat)
    }

    /// Adds relations (each a morphism declared to vanish) and re-completes.
    pub fn with_relations(&self, relations: Vec<Morphism>) -> Result<Self> {
        let mut all = self.relations.clone();
        all.extend(relations);
        Self::from_parts(self.objects.clone(), self.declared_parts(), all, self.length_cap)
    }

    /// The same presentation completed with another length cap.
    pub fn with_length_cap(&self, cap: usize) -> Result<Self> {
        Self::from_parts(self.objects.clone(), self.declared_parts(), self.relations.clone(), cap)
    }

    fn declared_parts(&self) -> Vec<(String, usize, usize, bool)> {
        self.generators[..self.declared]
            .iter()
            .map(|g| (g.name.clone(), g.source, g.target, g.inverse.is_some()))
            .collect()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Number of declared (not formally inverted) generators; they come first.
    pub fn declared_count(&self) -> usize {
        self.declared
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn invertible_count(&self) -> usize {
        self.generators.len() - self.declared
    }

    pub fn relations(&self) -> &[Morphism] {
        &self.relations
    }

    pub fn rules(&self) -> impl Iterator<Item = (&GenWord, &Terms)> {
        self.rules.iter()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    pub fn completion(&self) -> &CompletionReport {
        &self.report
    }

    /// Source and target of a nonempty composable word.
    pub fn endpoints(&self, w: &[usize]) -> Option<(usize, usize)> {
        let first = self.generators.get(*w.first()?)?;
        let last = self.generators.get(*w.last()?)?;
        for pair in w.windows(2) {
            if self.generators.get(pair[0])?.source != self.generators.get(pair[1])?.target {
                return None;
            }
        }
        Some((last.source, first.target))
    }

    pub fn check_morphism(&self, m: &Morphism) -> Result<()> {
        for w in m.terms.keys() {
            let ok = if w.is_empty() {
                m.source == m.target
            } else {
                self.endpoints(w) == Some((m.source, m.target))
            };
            if !ok {
                return Err(Error::InvalidInput(format!("term {} is not a morphism {}→{}", self.format_word(w, m.source), m.source, m.target)));
            }
        }
        Ok(())
    }

    pub fn generator_morphism(&self, g: usize) -> Morphism {
        let gen = &self.generators[g];
        Morphism::word(gen.source, gen.target, vec![g])
    }

    /// Parses `(coefficient, word)` terms.  A word lists generator names
    /// separated by spaces, leftmost applied last; `id(X)` is an identity.
    pub fn parse(&self, terms: &[(i64, &str)]) -> Result<Morphism> {
        let mut out: Option<Morphism> = None;
        for (c, text) in terms {
            let mut w = Vec::new();
            let mut ident = None;
            for tok in text.split_whitespace() {
                if let Some(obj) = tok.strip_prefix("id(").and_then(|s| s.strip_suffix(')')) {
                    ident = Some(self.object_index(obj).ok_or_else(|| Error::InvalidInput(format!("unknown object {obj}")))?);
                } else {
                    w.push(self.generator_index(tok).ok_or_else(|| Error::InvalidInput(format!("unknown generator {tok}")))?);
                }
            }
            let (s, t) = match (w.is_empty(), ident) {
                (true, Some(x)) => (x, x),
                (false, _) => self
                    .endpoints(&w)
                    .ok_or_else(|| Error::InvalidInput(format!("{text} is not composable")))?,
                (true, None) => return Err(Error::InvalidInput("empty word".into())),
            };
            let m = Morphism::word(s, t, w).scale(&Q::from(*c));
            out = Some(match out {
                None => m,
                Some(acc) => acc.add(&m)?,
            });
        }
        out.ok_or_else(|| Error::InvalidInput("no terms".into()))
    }

    pub fn format_word(&self, w: &[usize], source: usize) -> String {
        if w.is_empty() {
            return format!("id({})", self.objects[source]);
        }
        w.iter().map(|&g| self.generators[g].name.as_str()).collect::<Vec<_>>().join("∘")
    }

    pub fn format(&self, m: &Morphism) -> String {
        if m.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<(&GenWord, &Q)> = m.terms.iter().collect();
        parts.sort_by(|a, b| word_order(b.0, a.0));
        let mut out = String::new();
        for (i, (w, c)) in parts.into_iter().enumerate() {
            let word = self.format_word(w, m.source);
            let (neg, mag) = if c.is_negative() { (true, -c.clone()) } else { (false, c.clone()) };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}·"));
            }
            out.push_str(&word);
        }
        out
    }

    fn find_redex(&self, w: &[usize]) -> Option<(usize, usize)> {
        for p in 0..w.len() {
            for l in 1..=self.max_lhs.min(w.len() - p) {
                if self.rules.contains_key(&w[p..p + l]) {
                    return Some((p, l));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &[usize]) -> bool {
        self.find_redex(w).is_none()
    }

    fn reduce_terms(&self, mut terms: Terms) -> Result<Terms> {
        let mut steps = 0usize;
        loop {
            let hit = terms.keys().find_map(|w| self.find_redex(w).map(|(p, l)| (w.clone(), p, l)));
            let Some((w, p, l)) = hit else { return Ok(terms) };
            steps += 1;
            if steps > REDUCTION_STEPS {
                return Err(Error::CapBreach { cap: REDUCTION_STEPS });
            }
            let c = terms.remove(&w).unwrap();
            for (rw, rc) in &self.rules[&w[p..p + l]] {
                let mut nw = Vec::with_capacity(w.len() - l + rw.len());
                nw.extend_from_slice(&w[..p]);
                nw.extend_from_slice(rw);
                nw.extend_from_slice(&w[p + l..]);
                add_term(&mut terms, nw, c.clone() * rc);
            }
        }
    }

    /// The unique irreducible representative, when the rules are confluent.
    pub fn normal_form(&self, m: &Morphism) -> Result<Morphism> {
        self.check_morphism(m)?;
        Ok(Morphism { terms: self.reduce_terms(m.terms.clone())?, ..*m })
    }

    pub fn equal(&self, a: &Morphism, b: &Morphism) -> Result<bool> {
        Ok(self.normal_form(&a.sub(b)?)?.is_zero())
    }

    /// `g ∘ f` in normal form.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        self.normal_form(&g.compose(f)?)
    }

    fn insert_relation(&mut self, rel: Terms) -> Result<()> {
        let mut pending = vec![rel];
        while let Some(t) = pending.pop() {
            let t = self.reduce_terms(t)?;
            let Some(lead) = t.keys().max_by(|a, b| word_order(a, b)).cloned() else { continue };
            if lead.is_empty() {
                return Err(Error::InvalidInput("the relations force an identity morphism to vanish".into()));
            }
            let inv = t[&lead].inv().unwrap();
            let mut rhs = Terms::new();
            for (w, x) in &t {
                if *w != lead {
                    rhs.insert(w.clone(), -(x.clone() * &inv));
                }
            }
            let obsolete: Vec<GenWord> = self.rules.keys().filter(|k| contains(k, &lead)).cloned().collect();
            for k in obsolete {
                let r = self.rules.remove(&k).unwrap();
                let mut back = Terms::new();
                for (w, c) in r {
                    back.insert(w, -c);
                }
                back.insert(k, Q::one());
                pending.push(back);
            }
            self.rules.insert(lead.clone(), rhs);
            self.max_lhs = self.rules.keys().map(|k| k.len()).max().unwrap_or(0);
            let stale: Vec<GenWord> = self
                .rules
                .iter()
                .filter(|(_, r)| r.keys().any(|w| contains(w, &lead)))
                .map(|(k, _)| k.clone())
                .collect();
            for k in stale {
                let r = self.rules[&k].clone();
                let r = self.reduce_terms(r)?;
                self.rules.insert(k, r);
            }
        }
        Ok(())
    }

    fn critical_pairs(&self) -> (Vec<(Terms, Terms)>, usize) {
        let mut pairs = Vec::new();
        let mut skipped = 0;
        for (u, ru) in &self.rules {
            for (v, rv) in &self.rules {
                for k in 1..u.len().min(v.len()) {
                    if u[u.len() - k..] != v[..k] {
                        continue;
                    }
                    if u.len() + v.len() - k > self.length_cap {
                        skipped += 1;
                        continue;
                    }
                    let mut a = Terms::new();
                    for (w, c) in ru {
                        let mut x = w.clone();
                        x.extend_from_slice(&v[k..]);
                        add_term(&mut a, x, c.clone());
                    }
                    let mut b = Terms::new();
                    for (w, c) in rv {
                        let mut x = u[..u.len() - k].to_vec();
                        x.extend_from_slice(w);
                        add_term(&mut b, x, c.clone());
                    }
                    pairs.push((a, b));
                }
            }
        }
        (pairs, skipped)
    }

    fn complete(&mut self) -> Result<()> {
        let mut report = CompletionReport { examined: true, ..CompletionReport::default() };
        loop {
            report.rounds += 1;
            let (pairs, skipped) = self.critical_pairs();
            report.critical_pairs += pairs.len();
            report.skipped_overlaps = skipped;
            let mut unresolved = 0;
            let last = report.rounds >= MAX_ROUNDS || self.rules.len() > MAX_RULES;
            for (a, b) in pairs {
                let d = difference(&self.reduce_terms(a)?, &self.reduce_terms(b)?);
                if d.is_empty() {
                    continue;
                }
                unresolved += 1;
                if !last {
                    self.insert_relation(d)?;
                }
            }
            if unresolved == 0 || last {
                report.unresolved = unresolved;
                self.report = report;
                return Ok(());
            }
        }
    }

    /// Irreducible words from `x` to `y` of length at most `bound`.
    pub fn hom_basis_bounded(&self, x: usize, y: usize, bound: usize) -> HomBasis {
        let mut words = Vec::new();
        let mut by_length = vec![0; bound + 1];
        let mut layer: Vec<GenWord> = vec![Vec::new()];
        let mut truncated = false;
        let mut seen = 0usize;
        for len in 0..=bound {
            for w in &layer {
                let t = if w.is_empty() { x } else { self.generators[w[0]].target };
                if t == y {
                    words.push(w.clone());
                    by_length[len] += 1;
                }
            }
            if len == bound {
                break;
            }
            let mut next = Vec::new();
            for w in &layer {
                let t = if w.is_empty() { x } else { self.generators[w[0]].target };
                for (g, gen) in self.generators.iter().enumerate() {
                    if gen.source != t {
                        continue;
                    }
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.push(g);
                    nw.extend_from_slice(w);
                    let reducible = (1..=self.max_lhs.min(nw.len())).any(|l| self.rules.contains_key(&nw[..l]));
                    if !reducible {
                        next.push(nw);
                    }
                }
            }
            seen += next.len();
            if seen > ENUMERATION_LIMIT {
                truncated = true;
                by_length.truncate(len + 1);
                break;
            }
            layer = next;
        }
        let saturated = !truncated && bound >= 1 && by_length[bound] == 0 && by_length[bound - 1] == 0;
        HomBasis { source: x, target: y, words, by_length, saturated }
    }

    /// Hom basis at the length cap, or an error if it has not saturated.
    pub fn hom_basis(&self, x: usize, y: usize) -> Result<HomBasis> {
        let h = self.hom_basis_bounded(x, y, self.length_cap);
        if !h.saturated {
            return Err(Error::NotSaturated { source: self.objects[x].clone(), target: self.objects[y].clone() });
        }
        Ok(h)
    }

    /// Inverse of a single scaled word made of invertible generators.
    pub fn word_inverse(&self, m: &Morphism) -> Option<Morphism> {
        if m.terms.len() != 1 {
            return None;
        }
        let (w, c) = m.terms.iter().next().unwrap();
        let mut inv = Vec::with_capacity(w.len());
        for &g in w.iter().rev() {
            inv.push(self.generators[g].inverse?);
        }
        let mut terms = Terms::new();
        terms.insert(inv, c.inv()?);
        Some(Morphism { source: m.target, target: m.source, terms })
    }

    /// Removes generators by substituting the given expressions for them.
    /// Formal inverses of removed generators are replaced by inverse words.
    pub fn eliminate(&self, replacements: &BTreeMap<usize, Morphism>) -> Result<(PresentedCategory, PresentedFunctor)> {
        let mut repl: BTreeMap<usize, Morphism> = BTreeMap::new();
        for (&g, r) in replacements {
            if g >= self.declared {
                return Err(Error::InvalidInput("only declared generators can be eliminated".into()));
            }
            let gen = &self.generators[g];
            if (r.source, r.target) != (gen.source, gen.target) {
                return Err(Error::InvalidInput(format!("replacement for {} has the wrong endpoints", gen.name)));
            }
            self.check_morphism(r)?;
            if r.terms.keys().flatten().any(|h| replacements.contains_key(h) || self.generators[*h].inverse.is_some_and(|i| replacements.contains_key(&i))) {
                return Err(Error::InvalidInput(format!("replacement for {} mentions an eliminated generator", gen.name)));
            }
            if let Some(h) = gen.inverse {
                let ri = self
                    .word_inverse(r)
                    .ok_or_else(|| Error::NotInvertible(format!("replacement for {}", gen.name)))?;
                repl.insert(h, ri);
            }
            repl.insert(g, r.clone());
        }
        let mut declared = Vec::new();
        let mut new_index = vec![usize::MAX; self.generators.len()];
        for (g, gen) in self.generators[..self.declared].iter().enumerate() {
            if !repl.contains_key(&g) {
                new_index[g] = declared.len();
                declared.push((gen.name.clone(), gen.source, gen.target, gen.inverse.is_some()));
            }
        }
        let mut next = declared.len();
        for gen in &self.generators[..self.declared] {
            if let Some(h) = gen.inverse {
                if !repl.contains_key(&h) {
                    new_index[h] = next;
                    next += 1;
                }
            }
        }
        let images: Vec<Morphism> = (0..self.generators.len())
            .map(|g| match repl.get(&g) {
                Some(r) => remap(r, &new_index),
                None => {
                    let gen = &self.generators[g];
                    Morphism::word(gen.source, gen.target, vec![new_index[g]])
                }
            })
            .collect();
        let functor = PresentedFunctor { object_map: (0..self.objects.len()).collect(), images };
        let relations: Vec<Morphism> = self
            .relations
            .iter()
            .map(|r| functor.substitute(r))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|r| !r.is_zero())
            .collect();
        let cat = Self::from_parts(self.objects.clone(), declared, relations, self.length_cap)?;
        Ok((cat, functor))
    }

    /// Eliminates every declared generator that rewrites to shorter words,
    /// returning the simplified presentation and the comparison functor.
    pub fn simplify(&self) -> Result<(PresentedCategory, PresentedFunctor)> {
        let mut cat = self.clone();
        let mut functor = PresentedFunctor::identity(self);
        loop {
            let candidate = cat.rules.iter().find_map(|(lhs, rhs)| {
                if lhs.len() != 1 || lhs[0] >= cat.declared {
                    return None;
                }
                let gen = &cat.generators[lhs[0]];
                let r = Morphism { source: gen.source, target: gen.target, terms: rhs.clone() };
                if gen.inverse.is_some() && cat.word_inverse(&r).is_none() {
                    return None;
                }
                Some((lhs[0], r))
            });
            let Some((g, r)) = candidate else { return Ok((cat, functor)) };
            let mut repl = BTreeMap::new();
            repl.insert(g, r);
            let (next, step) = cat.eliminate(&repl)?;
            functor = functor.then(&step, &next)?;
            cat = next;
        }
    }

    /// Renames objects and declared generators (formal inverses follow).
    pub fn renamed(&self, objects: &[(&str, &str)], generators: &[(&str, &str)]) -> PresentedCategory {
        let mut out = self.clone();
        for (old, new) in objects {
            if let Some(i) = out.object_index(old) {
                out.objects[i] = new.to_string();
            }
        }
        for (old, new) in generators {
            if let Some(i) = out.generator_index(old) {
                out.generators[i].name = new.to_string();
                if let Some(h) = out.generators[i].inverse {
                    out.generators[h].name = format!("{new}⁻¹");
                }
            }
        }
        out
    }
}

fn remap(m: &Morphism, index: &[usize]) -> Morphism {
    let mut terms = Terms::new();
    for (w, c) in &m.terms {
        add_term(&mut terms, w.iter().map(|&g| index[g]).collect(), c.clone());
    }
    Morphism { terms, ..*m }
}

/// A functor between presented categories, given on objects and on every
/// generator including formal inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedFunctor {
    pub object_map: Vec<usize>,
    pub images: Vec<Morphism>,
}

impl PresentedFunctor {
    pub fn identity(cat: &PresentedCategory) -> Self {
        PresentedFunctor {
            object_map: (0..cat.objects.len()).collect(),
            images: (0..cat.generators.len()).map(|g| cat.generator_morphism(g)).collect(),
        }
    }

    /// Builds a functor from images of the declared generators; images of
    /// formal inverses are the inverse words of those images.
    pub fn from_declared(
        source: &PresentedCategory,
        target: &PresentedCategory,
        object_map: Vec<usize>,
        declared: Vec<Morphism>,
    ) -> Result<Self> {
        if declared.len() != source.declared || object_map.len() != source.objects.len() {
            return Err(Error::DimensionMismatch { expected: source.declared, found: declared.len() });
        }
        let mut images = declared;
        for g in source.declared..source.generators.len() {
            let partner = source.generators[g].inverse.unwrap();
            let inv = target
                .word_inverse(&images[partner])
                .ok_or_else(|| Error::NotInvertible(format!("image of {}", source.generators[partner].name)))?;
            images.push(inv);
        }
        Ok(PresentedFunctor { object_map, images })
    }

    /// Image of `m` as an unreduced expression.
    fn substitute(&self, m: &Morphism) -> Result<Morphism> {
        let (s, t) = (self.object_map[m.source], self.object_map[m.target]);
        let mut out = Morphism::zero(s, t);
        for (w, c) in &m.terms {
            let mut acc = Morphism::identity(t);
            for &g in w {
                acc = acc.compose(&self.images[g])?;
            }
            out = out.add(&acc.scale(c))?;
        }
        Ok(out)
    }

    pub fn apply(&self, target: &PresentedCategory, m: &Morphism) -> Result<Morphism> {
        let (s, t) = (self.object_map[m.source], self.object_map[m.target]);
        let mut out = Morphism::zero(s, t);
        for (w, c) in &m.terms {
            let mut acc = Morphism::identity(t);
            for &g in w {
                acc = target.compose(&acc, &self.images[g])?;
            }
            out = out.add(&acc.scale(c))?;
        }
        target.normal_form(&out)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PresentedFunctor, target: &PresentedCategory) -> Result<PresentedFunctor> {
        Ok(PresentedFunctor {
            object_map: self.object_map.iter().map(|&x| next.object_map[x]).collect(),
            images: self.images.iter().map(|m| next.apply(target, m)).collect::<Result<Vec<_>>>()?,
        })
    }

    /// Endpoints agree, relations go to zero and inverse pairs go to inverse pairs.
    pub fn check(&self, source: &PresentedCategory, target: &PresentedCategory) -> Result<()> {
        if self.images.len() != source.generators.len() || self.object_map.len() != source.objects.len() {
            return Err(Error::InvalidInput("functor data does not match its source".into()));
        }
        for (g, gen) in source.generators.iter().enumerate() {
            let im = &self.images[g];
            if (im.source, im.target) != (self.object_map[gen.source], self.object_map[gen.target]) {
                return Err(Error::NotAMorphism(format!("image of {} has the wrong endpoints", gen.name)));
            }
            target.check_morphism(im)?;
            if let Some(h) = gen.inverse {
                let id = Morphism::identity(im.target);
                if !target.equal(&target.compose(im, &self.images[h])?, &id)? {
                    return Err(Error::NotAMorphism(format!("image of {} is not inverted", gen.name)));
                }
            }
        }
        for r in &source.relations {
            let im = self.apply(target, r)?;
            if !im.is_zero() {
                return Err(Error::NotAMorphism(format!(
                    "relation {} maps to {}",
                    source.format(r),
                    target.format(&im)
                )));
            }
        }
        Ok(())
    }
}

/// A colimit presentation with its cone out of the base category.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub category: PresentedCategory,
    pub cone: PresentedFunctor,
    /// Relations added by the construction, in the result before simplification.
    pub added_relations: Vec<Morphism>,
}

/// Coequalizer of two functors `f, g: source → target`.
pub fn coequalizer(
    source: &PresentedCategory,
    target: &PresentedCategory,
    f: &PresentedFunctor,
    g: &PresentedFunctor,
) -> Result<Colimit> {
    let n = target.objects.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for o in 0..source.objects.len() {
        let (a, b) = (root(&mut parent, f.object_map[o]), root(&mut parent, g.object_map[o]));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| root(&mut parent, x)).collect();
    let mut reps: Vec<usize> = roots.clone();
    reps.sort_unstable();
    reps.dedup();
    let object_map: Vec<usize> = roots.iter().map(|r| reps.binary_search(r).unwrap()).collect();
    let objects: Vec<String> = reps
        .iter()
        .map(|&r| {
            (0..n).filter(|&x| roots[x] == r).map(|x| target.objects[x].as_str()).collect::<Vec<_>>().join("=")
        })
        .collect();
    let move_obj = |m: &Morphism| Morphism { source: object_map[m.source], target: object_map[m.target], terms: m.terms.clone() };
    let mut relations: Vec<Morphism> = target.relations.iter().map(move_obj).collect();
    let mut added = Vec::new();
    for s in 0..source.declared {
        let d = move_obj(&f.images[s]).sub(&move_obj(&g.images[s]))?;
        if !d.is_zero() {
            added.push(d);
        }
    }
    relations.extend(added.iter().cloned());
    let declared: Vec<(String, usize, usize, bool)> = target.generators[..target.declared]
        .iter()
        .map(|x| (x.name.clone(), object_map[x.source], object_map[x.target], x.inverse.is_some()))
        .collect();
    let quotient = PresentedCategory::from_parts(objects, declared, relations, target.length_cap)?;
    let to_quotient = PresentedFunctor {
        object_map: object_map.clone(),
        images: (0..target.generators.len()).map(|x| quotient.generator_morphism(x)).collect(),
    };
    let (category, simp) = quotient.simplify()?;
    let cone = to_quotient.then(&simp, &category)?;
    Ok(Colimit { category, cone, added_relations: added })
}

/// One inserted invertible transformation `F ⇒ G` between functors into the base.
#[derive(Clone, Debug)]
pub struct InsertedPair {
    pub label: String,
    pub f: PresentedFunctor,
    pub g: PresentedFunctor,
}

#[derive(Clone, Debug)]
pub struct Coisoinserter {
    pub colimit: Colimit,
    /// `components[p][x]`: generator index of the component of pair `p` at source object `x`.
    pub components: Vec<Vec<usize>>,
}

/// Freely adds invertible natural transformations `F_p ⇒ G_p` to `target`.
pub fn coisoinserter(source: &PresentedCategory, target: &PresentedCategory, pairs: &[InsertedPair]) -> Result<Coisoinserter> {
    let m = target.declared;
    let mut declared = target.declared_parts();
    let mut components = Vec::with_capacity(pairs.len());
    for p in pairs {
        let mut comp = Vec::with_capacity(source.objects.len());
        for (x, name) in source.objects.iter().enumerate() {
            comp.push(declared.len());
            declared.push((format!("ξ{}({})", p.label, name), p.f.object_map[x], p.g.object_map[x], true));
        }
        components.push(comp);
    }
    let added_gens = declared.len() - m;
    // formal inverses of the target shift by the number of new generators
    let index: Vec<usize> = (0..target.generators.len()).map(|g| if g < m { g } else { g + added_gens }).collect();
    let mut relations: Vec<Morphism> = target.relations.iter().map(|r| remap(r, &index)).collect();
    let mut added = Vec::new();
    for (p, pair) in pairs.iter().enumerate() {
        for s in 0..source.declared {
            let gen = &source.generators[s];
            let xi = |x: usize| Morphism::word(pair.f.object_map[x], pair.g.object_map[x], vec![components[p][x]]);
            let lhs = xi(gen.target).compose(&remap(&pair.f.images[s], &index))?;
            let rhs = remap(&pair.g.images[s], &index).compose(&xi(gen.source))?;
            let d = lhs.sub(&rhs)?;
            if !d.is_zero() {
                added.push(d);
            }
        }
    }
    relations.extend(added.iter().cloned());
    // Completion is left to the caller: the inserted transformations usually
    // make the rewriting system infinite.
    let category = PresentedCategory::uncompleted(target.objects.clone(), declared, relations, target.length_cap)?;
    let cone = PresentedFunctor {
        object_map: (0..target.objects.len()).collect(),
        images: (0..target.generators.len()).map(|g| category.generator_morphism(index[g])).collect(),
    };
    Ok(Coisoinserter { colimit: Colimit { category, cone, added_relations: added }, components })
}

/// Imposes `α = β` for each given pair of parallel morphisms, then
/// eliminates generators made redundant.
pub fn coequifier(cat: &PresentedCategory, pairs: &[(Morphism, Morphism)]) -> Result<Colimit> {
    let mut added = Vec::new();
    for (a, b) in pairs {
        let d = a.sub(b)?;
        if !d.is_zero() {
            added.push(d);
        }
    }
    let quotient = cat.with_relations(added.clone())?;
    let (category, cone) = quotient.simplify()?;
    Ok(Colimit { category, cone, added_relations: added })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_category() -> PresentedCategory {
        PresentedCategory::free(&["X"], &[GeneratorSpec::new("x", "X", "X")], 12).unwrap()
    }

    #[test]
    fn truncated_polynomial_ring() {
        let free = loop_category();
        let x3 = free.parse(&[(1, "x x x")]).unwrap();
        let cat = free.with_relations(vec![x3]).unwrap();
        assert!(cat.completion().confluent_at_cap());
        let h = cat.hom_basis(0, 0).unwrap();
        assert_eq!(h.dim(), 3);
        assert_eq!(h.by_length[..4], [1, 1, 1, 0]);
        let x = cat.parse(&[(1, "x")]).unwrap();
        assert!(cat.compose(&x, &cat.compose(&x, &x).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn free_loop_never_saturates() {
        let cat = loop_category();
        let h = cat.hom_basis_bounded(0, 0, 10);
        assert!(!h.saturated);
        assert_eq!(h.dim(), 11);
        assert!(matches!(cat.hom_basis(0, 0), Err(Error::NotSaturated { .. })));
    }

    #[test]
    fn completion_finds_hidden_consequence() {
        // yx = x, xy = y in one object: completion adds x^2 = x, y^2 = y.
        let free = PresentedCategory::free(&["X"], &[GeneratorSpec::new("x", "X", "X"), GeneratorSpec::new("y", "X", "X")], 8).unwrap();
        let r1 = free.parse(&[(1, "y x"), (-1, "x")]).unwrap();
        let r2 = free.parse(&[(1, "x y"), (-1, "y")]).unwrap();
        let cat = free.with_relations(vec![r1, r2]).unwrap();
        assert!(cat.completion().confluent_at_cap());
        let xx = cat.parse(&[(1, "x x")]).unwrap();
        let x = cat.parse(&[(1, "x")]).unwrap();
        assert!(cat.equal(&xx, &x).unwrap());
    }

    #[test]
    fn inverses_cancel() {
        let cat = PresentedCategory::free(&["X", "Y"], &[GeneratorSpec::invertible("g", "X", "Y")], 8).unwrap();
        assert_eq!(cat.generators().len(), 2);
        let m = cat.parse(&[(1, "g g⁻¹ g")]).unwrap();
        assert_eq!(cat.normal_form(&m).unwrap(), cat.parse(&[(1, "g")]).unwrap());
        assert_eq!(cat.hom_basis(0, 0).unwrap().dim(), 1);
        assert_eq!(cat.hom_basis(0, 1).unwrap().dim(), 1);
    }

    #[test]
    fn identity_killed_is_rejected() {
        let free = loop_category();
        let r = free.parse(&[(1, "id(X)")]).unwrap();
        assert!(free.with_relations(vec![r]).is_err());
    }

    #[test]
    fn formatting() {
        let cat = loop_category();
        let m = cat.parse(&[(2, "x x"), (-1, "id(X)")]).unwrap();
        assert_eq!(cat.format(&m), "2·x∘x - id(X)");
    }

    #[test]
    fn simplify_drops_redundant_generator() {
        let free = PresentedCategory::free(&["X"], &[GeneratorSpec::new("x", "X", "X"), GeneratorSpec::new("y", "X", "X")], 8).unwrap();
        let r = free.parse(&[(1, "y"), (-2, "x")]).unwrap();
        let cat = free.with_relations(vec![r]).unwrap();
        let (s, f) = cat.simplify().unwrap();
        assert_eq!(s.generators().len(), 1);
        f.check(&cat, &s).unwrap();
        let y = cat.parse(&[(1, "y")]).unwrap();
        assert_eq!(s.format(&f.apply(&s, &y).unwrap()), "2·x");
    }
}
