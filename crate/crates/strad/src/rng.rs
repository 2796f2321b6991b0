//! Reproducible random-number streams.
//!
//! Every consumer derives its own ChaCha8 stream from `(master_seed,
//! domain, index)`. ChaCha is a counter-mode generator with 2^64
//! independent streams, so trajectories are independent and
//! order-insensitive: worker count and merge order cannot change results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Separates unrelated uses of the same master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamDomain {
    /// Per-trajectory dynamical randomness (scattering, flight draws, initial conditions).
    Trajectory,
    /// Quenched environments shared by several trajectories.
    Environment,
    /// Bootstrap resampling.
    Bootstrap,
}

impl StreamDomain {
    fn tag(self) -> u64 {
        match self {
            StreamDomain::Trajectory => 0,
            StreamDomain::Environment => 1,
            StreamDomain::Bootstrap => 2,
        }
    }
}

/// SplitMix64 step; used to expand the master seed into key material.
fn splitmix64(state: &mut u64) {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
}

fn splitmix64_output(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Dedicated stream for `(master_seed, domain, index)`.
pub fn stream(master_seed: u64, domain: StreamDomain, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    let mut state = master_seed;
    for chunk in key.chunks_exact_mut(8) {
        splitmix64(&mut state);
        chunk.copy_from_slice(&splitmix64_output(state).to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    debug_assert!(index < 1 << 56, "stream index exhausts the counter space");
    rng.set_stream(domain.tag() << 56 | index);
    rng
}

/// Uniform draw on the half-open interval (0, 1]; safe as a power-law
/// transform argument.
pub fn unit_open(rng: &mut impl Rng) -> f64 {
    1.0 - rng.gen::<f64>()
}

/// Pareto draw with survival function `(x/x_min)^-index` for `x >= x_min`,
/// by inverse transform.
pub fn pareto(rng: &mut impl Rng, x_min: f64, index: f64) -> f64 {
    x_min * unit_open(rng).powf(-1.0 / index)
}
