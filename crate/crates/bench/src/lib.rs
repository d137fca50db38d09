//! Benchmark input generators.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relnet_core::{discretize_equal_width, DiscretizedProfile};

/// Gaussian-ish expression profiles discretized the way the pipeline does
/// it: `genes` profiles of `samples` values over `bins` equal-width bins.
pub fn random_profiles(
    genes: usize,
    samples: usize,
    bins: u16,
    seed: u64,
) -> Vec<DiscretizedProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut uniform = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    (0..genes)
        .map(|g| {
            // Sum of three uniforms: cheap, bounded, bell-shaped.
            let values: Vec<f64> = (0..samples)
                .map(|_| uniform() + uniform() + uniform())
                .collect();
            discretize_equal_width(&format!("g{g}"), &values, bins)
        })
        .collect()
}
