mod common;

use common::{bicat, config, kind};
use proptest::prelude::*;
use starcat_core::bicategory::f_index;
use starcat_core::bimodule::{associator, hom_space, is_intertwiner, peirce_inverse, tensor_over, Bimodule};
use starcat_core::{Field, Q};

fn setting() -> impl Strategy<Value = (usize, bool)> {
    (1usize..=2, any::<bool>())
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn hom_elements_are_intertwiners(
        (n, zz) in setting(),
        x in 0usize..4,
        y in 0usize..4,
        coeffs in prop::collection::vec(-3i64..=3, 8),
    ) {
        let b = bicat(n, kind(zz));
        let cat = b.catalog();
        let (x, y) = (x % cat.len(), y % cat.len());
        let h = cat.hom(x, y);
        let c: Vec<Q> = coeffs.iter().cycle().take(h.dim()).map(|&v| Q::from_i64(v)).collect();
        let f = h.combine(&c);
        prop_assert!(is_intertwiner(cat.object(x), cat.object(y), &f));
        prop_assert_eq!(h.coordinates(&f), Some(c));
    }

    #[test]
    fn hom_is_additive_in_both_arguments((n, zz) in setting(), x in 0usize..4, y in 0usize..4, z in 0usize..4) {
        let b = bicat(n, kind(zz));
        let cat = b.catalog();
        let (x, y, z) = (x % cat.len(), y % cat.len(), z % cat.len());
        let sum = Bimodule::direct_sum(&[cat.object(x), cat.object(y)]).unwrap();
        let out = hom_space(&sum, cat.object(z)).unwrap().dim();
        prop_assert_eq!(out, cat.hom(x, z).dim() + cat.hom(y, z).dim());
        let into = hom_space(cat.object(z), &sum).unwrap().dim();
        prop_assert_eq!(into, cat.hom(z, x).dim() + cat.hom(z, y).dim());
    }

    #[test]
    fn tensor_of_projectives_has_expected_dimension((n, zz) in (1usize..=3, any::<bool>()), j in 0usize..4, k in 0usize..4) {
        let b = bicat(n, kind(zz));
        let a = b.algebra();
        let (j, k) = (j % (n + 1), k % (n + 1));
        let t = tensor_over(b.catalog().object(f_index(j)), b.catalog().object(f_index(k))).unwrap();
        // (Ae_j ⊗ e_0A) ⊗_A (Ae_k ⊗ e_0A) ≅ Ae_j ⊗ e_0Ae_k ⊗ e_0A
        let ae_j: usize = (0..=n).map(|v| a.peirce_dim(v, j)).sum();
        let e0a: usize = (0..=n).map(|w| a.peirce_dim(0, w)).sum();
        prop_assert_eq!(t.bimodule().dim(), ae_j * a.peirce_dim(0, k) * e0a);
    }

    #[test]
    fn decompositions_resum((n, zz) in setting(), x in 0usize..4, y in 0usize..4) {
        let b = bicat(n, kind(zz));
        let cat = b.catalog();
        let (x, y) = (x % cat.len(), y % cat.len());
        let t = tensor_over(cat.object(x), cat.object(y)).unwrap();
        let dec = cat.decompose(t.bimodule()).unwrap();
        let m = dec.multiplicities(cat.len());
        let resum: usize = m.iter().zip(cat.objects()).map(|(k, o)| k * o.dim()).sum();
        prop_assert_eq!(resum, t.bimodule().dim());
        prop_assert_eq!(dec.total_dim(), t.bimodule().dim());
        let (inc, proj) = (dec.inclusion_matrix(t.bimodule().dim()), dec.projection_matrix());
        prop_assert!(proj.mul(&inc).is_identity());
        prop_assert!(inc.mul(&proj).is_identity());
        prop_assert_eq!(&b.left_action().product(x, y).decomposition.summands, &dec.summands);
    }
}

proptest! {
    #![proptest_config(config(8))]

    #[test]
    fn associators_are_invertible_intertwiners(zz in any::<bool>(), i in 0usize..3, j in 0usize..3, k in 0usize..3) {
        let b = bicat(1, kind(zz));
        let cat = b.catalog();
        let (m, n, p) = (cat.object(i), cat.object(j), cat.object(k));
        let mn = tensor_over(m, n).unwrap();
        let mn_p = tensor_over(mn.bimodule(), p).unwrap();
        let np = tensor_over(n, p).unwrap();
        let m_np = tensor_over(m, np.bimodule()).unwrap();
        let a = associator(&mn, &mn_p, &np, &m_np);
        prop_assert!(is_intertwiner(mn_p.bimodule(), m_np.bimodule(), &a));
        prop_assert!(peirce_inverse(&a, mn_p.bimodule(), m_np.bimodule()).is_some());
    }
}
