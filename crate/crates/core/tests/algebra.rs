mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{config, q_vec};
use proptest::prelude::*;
use starcat_core::quiver::{build_star_quotient, build_zigzag, AlgebraMap, FiniteDimAlgebra};

/// Counts the nonzero classes of paths in the star quiver without going
/// through any relation solver: paths of length ≥ 3 vanish, `b_i a_j`
/// vanishes for `i ≠ j`, the loops `b_k a_k` at the centre are all one
/// element, `a_i b_j` vanishes for `i ≠ j`, and the leaf loops `a_k b_k`
/// survive only in the zigzag algebra.
fn path_oracle(n: usize, leaf_loops: bool) -> usize {
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
    enum Step {
        Out(usize),
        In(usize),
    }
    let step_src = |s: Step| match s {
        Step::Out(_) => 0,
        Step::In(k) => k,
    };
    let step_tgt = |s: Step| match s {
        Step::Out(k) => k,
        Step::In(_) => 0,
    };
    let steps: Vec<Step> = (1..=n).map(Step::Out).chain((1..=n).map(Step::In)).collect();
    let mut classes: BTreeSet<String> = (0..=n).map(|v| format!("e{v}")).collect();
    for &s in &steps {
        classes.insert(match s {
            Step::Out(k) => format!("a{k}"),
            Step::In(k) => format!("b{k}"),
        });
    }
    // first, then second
    for &first in &steps {
        for &second in &steps {
            if step_tgt(first) != step_src(second) {
                continue;
            }
            match (first, second) {
                (Step::Out(i), Step::In(j)) if i == j => {
                    classes.insert("c".into());
                }
                (Step::In(i), Step::Out(j)) if i == j && leaf_loops => {
                    classes.insert(format!("c{i}"));
                }
                _ => {}
            }
        }
    }
    classes.len()
}

#[test]
fn dimensions_match_path_enumeration() {
    for n in 1..=8 {
        let z = build_zigzag(n).unwrap();
        let a = build_star_quotient(n).unwrap();
        assert_eq!(z.dim(), path_oracle(n, true));
        assert_eq!(a.dim(), path_oracle(n, false));
        assert_eq!(z.dim(), 4 * n + 2);
        assert_eq!(a.dim(), 3 * n + 2);
    }
}

#[test]
fn structure_constants_are_associative() {
    for n in 1..=5 {
        assert!(build_zigzag(n).unwrap().is_associative(), "Λ_{n}");
        assert!(build_star_quotient(n).unwrap().is_associative(), "A_{n}");
    }
}

#[test]
fn peirce_decomposition_sums_to_dimension() {
    for n in 1..=6 {
        for a in [build_zigzag(n).unwrap(), build_star_quotient(n).unwrap()] {
            let total: usize = (0..=n).flat_map(|v| (0..=n).map(move |w| (v, w))).map(|(v, w)| a.peirce_dim(v, w)).sum();
            assert_eq!(total, a.dim());
        }
    }
}

#[test]
fn projection_kills_exactly_the_leaf_loops() {
    for n in 1..=5 {
        let z = Arc::new(build_zigzag(n).unwrap());
        let a = Arc::new(build_star_quotient(n).unwrap());
        let q = AlgebraMap::by_paths(z, a).unwrap();
        assert!(q.is_homomorphism());
        assert_eq!(q.kernel().dim(), n);
    }
}

fn algebra(n: usize, zigzag: bool) -> FiniteDimAlgebra {
    if zigzag {
        build_zigzag(n).unwrap()
    } else {
        build_star_quotient(n).unwrap()
    }
}

fn element(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, dim)
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn random_elements_associate((n, zz, x, y, z) in (1usize..=5, any::<bool>()).prop_flat_map(|(n, zz)| {
        let d = algebra(n, zz).dim();
        (Just(n), Just(zz), element(d), element(d), element(d))
    })) {
        let a = algebra(n, zz);
        let (x, y, z) = (q_vec(&x), q_vec(&y), q_vec(&z));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.mul(&a.unit(), &x), x.clone());
        prop_assert_eq!(a.mul(&x, &a.unit()), x);
    }

    #[test]
    fn radical_cubes_vanish((n, zz, x, y, z) in (1usize..=5, any::<bool>()).prop_flat_map(|(n, zz)| {
        let d = algebra(n, zz).dim();
        (Just(n), Just(zz), element(d), element(d), element(d))
    })) {
        let a = algebra(n, zz);
        let rad = a.radical_basis();
        let cut = |v: Vec<i64>| {
            let mut out = q_vec(&vec![0; v.len()]);
            for &i in &rad {
                out[i] = q_vec(&[v[i]])[0].clone();
            }
            out
        };
        let p = a.mul(&a.mul(&cut(x), &cut(y)), &cut(z));
        prop_assert!(p.iter().all(starcat_core::Field::is_zero));
    }
}
