use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use starcat::report::*;

/// Fixed seed unless `STARCAT_SEED` is set.
fn config(cases: u32) -> ProptestConfig {
    let seed = std::env::var("STARCAT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5e_ed0f_57a2);
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..ProptestConfig::default() }
}

fn label() -> impl Strategy<Value = String> {
    "[A-Za-z_0-9{},ξ∘ -]{0,12}"
}

fn matrix() -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1usize..5).prop_flat_map(|k| prop::collection::vec(prop::collection::vec(0usize..4, k), k))
}

fn class_entry() -> impl Strategy<Value = ClassEntry> {
    (
        label(),
        0usize..6,
        prop::collection::vec((label(), matrix()).prop_map(|(generator, matrix)| LabeledMatrix { generator, matrix }), 0..4),
        any::<bool>(),
        prop::option::of(any::<bool>()),
    )
        .prop_map(|(partition, base_algebra_rank, action_matrices, simple_transitive, presentation_consistent)| ClassEntry {
            partition,
            base_algebra_rank,
            action_matrices,
            simple_transitive,
            presentation_consistent,
        })
}

fn classify_report() -> impl Strategy<Value = ClassifyReport> {
    (1usize..6, prop::collection::vec(class_entry(), 0..5), any::<bool>(), prop::collection::vec(label(), 0..2)).prop_map(
        |(n, classes, pairwise_inequivalent, failures)| ClassifyReport {
            n,
            bell_number: classes.len(),
            classes,
            pairwise_inequivalent,
            failures,
        },
    )
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (
        prop::collection::vec(label(), 1..4),
        prop::collection::vec((label(), label(), label(), any::<bool>()), 0..4),
        prop::collection::vec(label(), 0..4),
    )
        .prop_map(|(objects, gens, relations)| Presentation {
            objects,
            generators: gens
                .into_iter()
                .map(|(name, src, tgt, invertible)| GeneratorEntry { name, src, tgt, invertible })
                .collect(),
            relations,
        })
}

fn naturality_report() -> impl Strategy<Value = NaturalityReport> {
    (
        label(),
        0usize..40,
        any::<bool>(),
        prop::option::of(label()),
        prop::option::of(label()),
        prop::collection::vec((1usize..4, 1usize..4, 1usize..4, any::<bool>()), 0..4),
    )
        .prop_map(|(algebra, dim, passes, element, top, swaps)| NaturalityReport {
            algebra,
            dim,
            swapped: (1, 2),
            verdict: Verdict { passes, element: element.clone(), multiplier: element, along_top: top.clone(), along_bottom: top },
            identity_passes: passes,
            star_swaps: swaps.into_iter().map(|(n, i, j, passes)| LeafSwap { n, i, j, passes }).collect(),
        })
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn classify_reports_round_trip(r in classify_report()) {
        let text = Report::Classify(r.clone()).to_json();
        let back: ClassifyReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(Report::Classify(back).to_json(), text);
    }

    #[test]
    fn presentations_round_trip(p in presentation(), cap in 4usize..20) {
        let r = CounterexampleReport {
            length_cap: cap,
            presentation: p,
            powers: vec![PowerRow { m: 1, normal_form: "x".into(), survives_truncation: true }],
            distinct_normal_forms: 1,
            end_by_length: vec![1; cap + 1],
            end_saturated: false,
        };
        let text = Report::Counterexample(r.clone()).to_json();
        prop_assert_eq!(serde_json::from_str::<CounterexampleReport>(&text).unwrap(), r);
    }

    #[test]
    fn naturality_reports_round_trip(r in naturality_report()) {
        let text = Report::Naturality(r.clone()).to_json();
        prop_assert_eq!(serde_json::from_str::<NaturalityReport>(&text).unwrap(), r);
    }
}
