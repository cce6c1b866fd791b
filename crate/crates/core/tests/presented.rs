mod common;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use common::config;
use proptest::prelude::*;
use starcat_core::classification::enumerate_partitions;
use starcat_core::presented::examples::{arrow_coequalizer, truncation};
use starcat_core::presented::star::{block_vertices, partition_colimit, PartitionColimit};
use starcat_core::presented::{Morphism, PresentedCategory, DEFAULT_LENGTH_CAP};
use starcat_core::quiver::build_star_quotient;
use starcat_core::{Field, Q};

fn colimit(n: usize, p: usize) -> Arc<PartitionColimit> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<PartitionColimit>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&(n, p)) {
        return c.clone();
    }
    let parts = enumerate_partitions(n).unwrap();
    let part = &parts[p % parts.len()];
    let c = Arc::new(partition_colimit(n, &part.blocks, DEFAULT_LENGTH_CAP).unwrap());
    cache.lock().unwrap().entry((n, p)).or_insert(c).clone()
}

/// A path of generators chosen by `picks`, starting at `start`; returns the
/// unreduced composite and the composite reduced step by step.
fn walk(cat: &PresentedCategory, start: usize, picks: &[usize]) -> (Morphism, Morphism) {
    let mut raw = Morphism::identity(start);
    let mut reduced = Morphism::identity(start);
    for &p in picks {
        let out: Vec<usize> = (0..cat.generators().len()).filter(|&g| cat.generators()[g].source == raw.target).collect();
        if out.is_empty() {
            break;
        }
        let g = cat.generator_morphism(out[p % out.len()]);
        raw = g.compose(&raw).unwrap();
        reduced = cat.compose(&g, &reduced).unwrap();
    }
    (raw, reduced)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn normal_forms_are_idempotent_and_irreducible(
        n in 1usize..=3,
        p in 0usize..5,
        start in 0usize..4,
        picks in prop::collection::vec(any::<usize>(), 0..7),
        others in prop::collection::vec(any::<usize>(), 0..7),
        (a, b) in (-3i64..=3, -3i64..=3),
    ) {
        let c = colimit(n, p);
        let cat = c.category();
        let start = start % cat.objects().len();
        let (raw, stepwise) = walk(cat, start, &picks);
        let nf = cat.normal_form(&raw).unwrap();
        prop_assert_eq!(&nf, &stepwise);
        prop_assert_eq!(&cat.normal_form(&nf).unwrap(), &nf);
        for w in nf.terms.keys() {
            prop_assert!(cat.is_irreducible(w));
        }
        // a linear combination with another path between the same objects
        let (raw2, _) = walk(cat, start, &others);
        if raw2.target == raw.target {
            let m = raw.scale(&Q::from_i64(a)).add(&raw2.scale(&Q::from_i64(b))).unwrap();
            let nf = cat.normal_form(&m).unwrap();
            prop_assert_eq!(&cat.normal_form(&nf).unwrap(), &nf);
            let by_parts = cat.normal_form(&raw).unwrap().scale(&Q::from_i64(a))
                .add(&cat.normal_form(&raw2).unwrap().scale(&Q::from_i64(b))).unwrap();
            prop_assert_eq!(cat.normal_form(&by_parts).unwrap(), nf);
        }
    }

    #[test]
    fn composition_is_associative(
        n in 1usize..=3,
        p in 0usize..5,
        start in 0usize..4,
        x in prop::collection::vec(any::<usize>(), 0..4),
        y in prop::collection::vec(any::<usize>(), 0..4),
        z in prop::collection::vec(any::<usize>(), 0..4),
    ) {
        let c = colimit(n, p);
        let cat = c.category();
        let (_, f) = walk(cat, start % cat.objects().len(), &x);
        let (_, g) = walk(cat, f.target, &y);
        let (_, h) = walk(cat, g.target, &z);
        let left = cat.compose(&cat.compose(&h, &g).unwrap(), &f).unwrap();
        let right = cat.compose(&h, &cat.compose(&g, &f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn truncations_factor_uniquely_through_the_coequalizer(m in 1usize..=9) {
        let demo = arrow_coequalizer(DEFAULT_LENGTH_CAP).unwrap();
        let (t, f) = truncation(&demo, m).unwrap();
        f.check(&demo.colimit.category, &t).unwrap();
        // both legs become equal after the cone, so T_m ∘ cone equalizes them
        let composite = demo.colimit.cone.then(&f, &t).unwrap();
        prop_assert_eq!(&composite.images[0], &composite.images[1]);
        let via_f = demo.f.then(&composite, &t).unwrap();
        let via_g = demo.g.then(&composite, &t).unwrap();
        prop_assert_eq!(&via_f.images[0], &via_g.images[0]);
        // the factorization is pinned by the image of the single generator
        prop_assert_eq!(t.format(&f.images[0]), "y");
        prop_assert_eq!(t.hom_basis(0, 0).unwrap().dim(), m);
    }
}

#[test]
fn completed_colimits_are_confluent_and_saturated() {
    for n in 1..=4 {
        for (i, part) in enumerate_partitions(n).unwrap().iter().enumerate() {
            let c = colimit(n, i);
            let cat = c.category();
            assert!(cat.completion().confluent_at_cap(), "{part}");
            let ar = build_star_quotient(c.rank()).unwrap();
            let v = block_vertices(n, &c.blocks);
            assert_eq!(cat.objects().len(), n + 1);
            for j in 0..=n {
                for k in 0..=n {
                    let h = cat.hom_basis(j, k).unwrap_or_else(|e| panic!("{part} ({j},{k}): {e}"));
                    assert!(h.saturated);
                    assert_eq!(h.dim(), ar.peirce_dim(v[j], v[k]), "{part} ({j},{k})");
                }
            }
        }
    }
}

#[test]
fn inserted_category_has_infinite_centre_endomorphisms() {
    for n in 1..=3 {
        for (i, part) in enumerate_partitions(n).unwrap().iter().enumerate() {
            let c = colimit(n, i);
            if c.pairs.is_empty() {
                continue;
            }
            let cw = &c.inserted.colimit.category;
            let h = cw.hom_basis_bounded(0, 0, DEFAULT_LENGTH_CAP);
            assert!(!h.saturated, "{part}");
            assert!(h.by_length.iter().all(|&d| d > 0), "{part}: {:?}", h.by_length);
        }
    }
}

#[test]
fn coequalizer_loop_is_free() {
    let demo = arrow_coequalizer(DEFAULT_LENGTH_CAP).unwrap();
    let cat = &demo.colimit.category;
    let x = cat.generator_morphism(0);
    let mut acc = Morphism::identity(0);
    let mut seen = Vec::new();
    for _ in 0..10 {
        acc = cat.compose(&acc, &x).unwrap();
        assert!(!acc.is_zero());
        seen.push(cat.format(&acc));
    }
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 10);
    assert!(!cat.hom_basis_bounded(0, 0, DEFAULT_LENGTH_CAP).saturated);
}
