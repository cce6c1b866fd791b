#![allow(dead_code)]

use proptest::test_runner::{Config, RngSeed};
use starcat_core::{Field, Matrix, Q};

/// Fixed seed unless `STARCAT_SEED` is set, so every run replays the same cases.
pub fn config(cases: u32) -> Config {
    let seed = std::env::var("STARCAT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5e_ed0f_57a2);
    Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

pub fn q_matrix(rows: &[Vec<i64>]) -> Matrix<Q> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q::from_i64(x)).collect()).collect())
}

pub fn q_vec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| Q::from_i64(x)).collect()
}

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use starcat_core::bicategory::{StarBicategory, StarKind};

/// Built once per process; proptest cases share them.
pub fn bicat(n: usize, kind: StarKind) -> Arc<StarBicategory> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool), Arc<StarBicategory>>>> = OnceLock::new();
    let key = (n, kind == StarKind::Zigzag);
    if let Some(b) = CACHE.get_or_init(Default::default).lock().unwrap().get(&key) {
        return b.clone();
    }
    let b = Arc::new(StarBicategory::new(n, kind).unwrap());
    CACHE.get_or_init(Default::default).lock().unwrap().entry(key).or_insert(b).clone()
}

pub fn kind(zigzag: bool) -> StarKind {
    if zigzag {
        StarKind::Zigzag
    } else {
        StarKind::Quotient
    }
}
