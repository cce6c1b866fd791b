//! Reduction of rational results modulo a prime, as an independent sanity
//! check of the Hom space computations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use starcat_core::bimodule::{Bimodule, Catalog};
use starcat_core::linalg::{set_modulus, Fp};
use starcat_core::{Matrix, Q};

use crate::report::CrossCheck;

fn reduce(m: &Matrix<Q>) -> Option<Matrix<Fp>> {
    let entries = m.entries().iter().map(Fp::from_q).collect::<Option<Vec<_>>>()?;
    Some(Matrix::from_flat(m.rows(), m.cols(), entries))
}

fn intertwines(x: &Bimodule, y: &Bimodule, f: &Matrix<Fp>) -> Result<bool, String> {
    let sides = [
        (x.left_algebra().generator_count(), true),
        (x.right_algebra().generator_count(), false),
    ];
    for (count, left) in sides {
        for g in 0..count {
            let (ax, ay) = if left {
                (x.left_generator_matrix(g), y.left_generator_matrix(g))
            } else {
                (x.right_generator_matrix(g), y.right_generator_matrix(g))
            };
            let (ax, ay) = match (reduce(&ax), reduce(&ay)) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err("action matrix has a denominator divisible by p".into()),
            };
            if f.mul(&ax) != ay.mul(f) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For every Hom space of `catalog`: the basis stays independent modulo
/// `p`, and `samples` random combinations still commute with both actions.
pub fn hom_spaces_mod_p(catalog: &Catalog, name: &str, p: u64, seed: u64, samples: usize) -> CrossCheck {
    let mut failures = Vec::new();
    if let Err(e) = set_modulus(p) {
        failures.push(e.to_string());
        return CrossCheck { prime: p, seed, hom_spaces: 0, samples: 0, failures };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = catalog.labels();
    let mut tested = 0;
    let mut spaces = 0;
    for x in 0..catalog.len() {
        for y in 0..catalog.len() {
            let h = catalog.hom(x, y);
            spaces += 1;
            let where_ = || format!("{name}: Hom({}, {})", labels[x], labels[y]);
            if h.dim() == 0 {
                continue;
            }
            let basis: Option<Vec<Matrix<Fp>>> = h.basis().iter().map(reduce).collect();
            let Some(basis) = basis else {
                failures.push(format!("{}: basis has a denominator divisible by {p}", where_()));
                continue;
            };
            let stacked = Matrix::from_rows(basis.iter().map(|b| b.entries().to_vec()).collect());
            if stacked.rank() != h.dim() {
                failures.push(format!("{}: basis rank {} mod {p}, expected {}", where_(), stacked.rank(), h.dim()));
                continue;
            }
            for _ in 0..samples {
                let mut f: Matrix<Fp> = Matrix::zeros(basis[0].rows(), basis[0].cols());
                for b in &basis {
                    let c = Fp::new(rng.gen_range(0..p.min(i64::MAX as u64)) as i64);
                    f.add_scaled(&c, b);
                }
                tested += 1;
                match intertwines(catalog.object(x), catalog.object(y), &f) {
                    Ok(true) => {}
                    Ok(false) => failures.push(format!("{}: random combination is not an intertwiner mod {p}", where_())),
                    Err(e) => failures.push(format!("{}: {e}", where_())),
                }
            }
        }
    }
    CrossCheck { prime: p, seed, hom_spaces: spaces, samples: tested, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use starcat_core::bicategory::{StarBicategory, StarKind};

    #[test]
    fn hom_spaces_survive_reduction() {
        let b = StarBicategory::new(2, StarKind::Quotient).unwrap();
        let c = hom_spaces_mod_p(b.catalog(), "A_2", 10007, 1, 2);
        assert!(c.ok(), "{:?}", c.failures);
        assert_eq!(c.hom_spaces, 16);
        assert!(c.samples > 0);
    }

    #[test]
    fn same_seed_same_result() {
        let b = StarBicategory::new(1, StarKind::Zigzag).unwrap();
        let a = hom_spaces_mod_p(b.catalog(), "L", 10007, 9, 3);
        let c = hom_spaces_mod_p(b.catalog(), "L", 10007, 9, 3);
        assert_eq!(a, c);
    }
}
