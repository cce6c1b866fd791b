mod common;

use common::{bicat, config};
use proptest::prelude::*;
use starcat_core::bicategory::{f_index, subrep_n, StarKind};
use starcat_core::classification::{
    action_equivalence, build_cwr_model, build_s_modification, check_modification_axiom, classify, enumerate_partitions,
    functors_agree, labeled_action_matrices, modification_space, refinement_transformation, scalar_proportionality,
    simple_transitive_check, ClassifyOptions,
};
use starcat_core::presented::star::partition_colimit;
use starcat_core::presented::DEFAULT_LENGTH_CAP;
use starcat_core::{Field, Q};

/// Bell numbers from the Bell triangle.
fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

#[test]
fn partitions_are_counted_by_bell_numbers() {
    assert_eq!((1..=5).map(bell).collect::<Vec<_>>(), vec![1, 2, 5, 15, 52]);
    for n in 1..=7 {
        assert_eq!(enumerate_partitions(n).unwrap().len(), bell(n), "n={n}");
    }
}

#[test]
fn classes_are_pairwise_inequivalent() {
    for n in 1..=4 {
        let opts = ClassifyOptions { presentation_bound: 0, ..ClassifyOptions::default() };
        let rep = classify(n, &opts).unwrap();
        assert_eq!(rep.classes.len(), bell(n));
        assert!(rep.pairwise_inequivalent);
        let mats: Vec<_> = rep.classes.iter().map(|c| c.action_matrices.clone()).collect();
        for i in 0..mats.len() {
            assert_eq!(action_equivalence(&mats[i], &mats[i]).map(|p| p.len()), Some(mats[i][0].1.len()));
            for j in i + 1..mats.len() {
                assert!(action_equivalence(&mats[i], &mats[j]).is_none(), "{} ~ {}", rep.classes[i].partition, rep.classes[j].partition);
            }
        }
    }
}

#[test]
fn action_rows_agree_exactly_on_blocks() {
    for n in 1..=4 {
        for p in enumerate_partitions(n).unwrap() {
            let m = build_cwr_model(&p).unwrap();
            assert_eq!(m.model.catalog().len(), p.rank() + 1);
            for k in 0..=n {
                for l in 0..=n {
                    let same = m.action_matrix(f_index(k)) == m.action_matrix(f_index(l));
                    assert_eq!(same, p.block_of[k] == p.block_of[l], "{p}: F_{k} vs F_{l}");
                }
            }
            assert_eq!(labeled_action_matrices(&m.model).len(), n + 2);
        }
    }
}

#[test]
fn models_are_simple_transitive() {
    for n in 1..=3 {
        for p in enumerate_partitions(n).unwrap() {
            let rep = simple_transitive_check(&build_cwr_model(&p).unwrap().model);
            assert!(rep.transitive && rep.is_simple_transitive(), "{p}");
        }
    }
    let nm = subrep_n(&bicat(2, StarKind::Quotient)).unwrap();
    let rep = simple_transitive_check(&nm);
    assert!(rep.transitive && !rep.is_simple_transitive());
    assert_eq!(rep.proper_ideals.len(), 1);
}

#[test]
fn refinements_compose_along_every_chain() {
    for n in 1..=3 {
        let parts = enumerate_partitions(n).unwrap();
        let cs: Vec<_> = parts.iter().map(|p| partition_colimit(n, &p.blocks, DEFAULT_LENGTH_CAP).unwrap()).collect();
        let mut chains = 0;
        for (a, pa) in parts.iter().enumerate() {
            for (b, pb) in parts.iter().enumerate() {
                if !pa.is_finer_than(pb) {
                    continue;
                }
                let fab = refinement_transformation(&cs[a], &cs[b]).unwrap();
                for (c, pc) in parts.iter().enumerate() {
                    if !pb.is_finer_than(pc) {
                        continue;
                    }
                    let fbc = refinement_transformation(&cs[b], &cs[c]).unwrap();
                    let fac = refinement_transformation(&cs[a], &cs[c]).unwrap();
                    let comp = fab.then(&fbc, cs[c].category()).unwrap();
                    assert!(functors_agree(cs[a].category(), cs[c].category(), &comp, &fac).unwrap(), "{pa} ≤ {pb} ≤ {pc}");
                    chains += 1;
                }
            }
        }
        assert!(chains >= parts.len());
    }
}

fn nonunit_scalar() -> impl Strategy<Value = Q> {
    (-5i64..=5, 1i64..=4).prop_filter_map("nonzero, not one", |(p, q)| {
        let s = Q::new(p, q);
        (!s.is_zero() && !s.is_one()).then_some(s)
    })
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn s_modifications_pass_and_perturbations_fail(
        n in 1usize..=3,
        j in 1usize..=3,
        k in 1usize..=3,
        object in 0usize..5,
        s in nonunit_scalar(),
    ) {
        let (j, k) = ((j - 1) % n + 1, (k - 1) % n + 1);
        let nm = subrep_n(&bicat(n, StarKind::Quotient)).unwrap();
        let m = build_s_modification(&nm, j, k).unwrap();
        let c = check_modification_axiom(&nm, &m);
        prop_assert!(c.holds(), "{:?}", c.failure);
        let object = object % nm.catalog().len();
        let bad = check_modification_axiom(&nm, &m.perturbed(object, &s));
        prop_assert!(!bad.holds());
        prop_assert!(bad.failure.is_some());
        // a global rescaling is still a modification
        prop_assert!(check_modification_axiom(&nm, &m.scale(&s)).holds());
    }

    #[test]
    fn modifications_are_proportional(n in 1usize..=2, j in 1usize..=2, k in 1usize..=2, s in nonunit_scalar()) {
        let (j, k) = ((j - 1) % n + 1, (k - 1) % n + 1);
        let nm = subrep_n(&bicat(n, StarKind::Quotient)).unwrap();
        let m = build_s_modification(&nm, j, k).unwrap();
        prop_assert_eq!(scalar_proportionality(&m, &m.scale(&s)).unwrap(), s.clone());
        let space = modification_space(&nm, j, k).unwrap();
        prop_assert_eq!(space.len(), 1);
        let lambda = scalar_proportionality(&m, &space[0]).unwrap();
        prop_assert!(!lambda.is_zero());
        prop_assert_eq!(scalar_proportionality(&m.scale(&s), &space[0]).unwrap(), lambda * s.inv().unwrap());
    }
}
