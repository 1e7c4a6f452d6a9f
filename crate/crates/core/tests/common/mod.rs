#![allow(dead_code)]

use gqc_core::{CovarianceMatrix, StsParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sts(r: f64, n_a: f64, n_b: f64) -> CovarianceMatrix {
    StsParams::new(r, n_a, n_b).unwrap().covariance().unwrap()
}

/// Random STS parameters with `r ∈ [0, 2]`, noises in `[0, 3]`.
pub fn random_params(rng: &mut impl Rng) -> StsParams {
    StsParams::new(
        rng.gen_range(0.0..=2.0),
        rng.gen_range(0.0..=3.0),
        rng.gen_range(0.0..=3.0),
    )
    .unwrap()
}

pub fn random_states(seed: u64, count: usize) -> Vec<(StsParams, CovarianceMatrix)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let p = random_params(&mut rng);
            (p, p.covariance().unwrap())
        })
        .collect()
}

/// `x` sits inside the indeterminate band around `threshold`.
pub fn in_band(x: f64, threshold: f64) -> bool {
    (x - threshold).abs() < gqc_core::BOUNDARY_BAND
}
