//! Uniform random generation: the recursive method over exact count
//! tables, Boltzmann samplers over the nested-radical systems, and the
//! profile and height statistics built on them.

mod boltzmann;
mod histogram;
mod profile;
mod recursive;

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::integer::Order;
use rug::Integer;

use crate::counting::CountError;
use crate::family::Family;
use crate::radicals::RadicalError;

pub use boltzmann::{
    boltzmann_probabilities, mean_size, singular_tuning, write_probability_csv, BoltzmannSampler, BoltzmannStats,
    LevelProbabilities, PROBABILITY_TOLERANCE_BITS,
};
pub use histogram::{unary_height_histogram, UnaryHeightHistogram};
pub use profile::{aggregate_profiles, write_profile_csv, ProfileAggregate, ProfileKind};
pub use recursive::RecursiveSampler;

#[derive(Debug, thiserror::Error)]
pub enum SampleError {
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Radical(#[from] RadicalError),
    #[error("{family} has no member of size {size}")]
    ZeroCount { family: Family, size: usize },
    #[error("{0} has no Boltzmann system")]
    Unsupported(Family),
    #[error("tuning x = {x} is not below the singularity of {family}")]
    Tuning { family: Family, x: String },
    #[error("size window [{min}, {max}] is empty")]
    EmptyWindow { min: usize, max: usize },
    #[error("no term in the size window after {} attempts ({} too small, {} too large, {} over the node guard)",
        .0.attempts, .0.too_small, .0.too_large, .0.guard_aborts)]
    Rejected(BoltzmannStats),
    #[error("precision alarm: {0}")]
    PrecisionAlarm(String),
}

/// Boltzmann tuning parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum Tuning {
    /// One ulp below the dominant singularity.
    Singular,
    /// A fixed `x`, which must lie below the singularity.
    Plain(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Method {
    Recursive,
    Boltzmann {
        tuning: Tuning,
        min_size: usize,
        max_size: usize,
        max_attempts: u64,
        /// Nodes after which a draw is abandoned; `None` means 50 times `max_size`.
        node_guard: Option<usize>,
    },
}

/// What to sample. `size` is exact for the recursive method and only the
/// nominal target for Boltzmann sampling.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplerSpec {
    pub family: Family,
    pub size: usize,
    pub method: Method,
    pub seed: u64,
    pub precision: u32,
}

impl SamplerSpec {
    pub fn recursive(family: Family, size: usize, seed: u64) -> SamplerSpec {
        SamplerSpec { family, size, method: Method::Recursive, seed, precision: crate::radicals::DEFAULT_PRECISION }
    }

    /// Boltzmann sampling in `[min, max]`, node guard at the default.
    pub fn boltzmann(family: Family, tuning: Tuning, min: usize, max: usize, seed: u64) -> SamplerSpec {
        SamplerSpec {
            family,
            size: (min + max) / 2,
            method: Method::Boltzmann {
                tuning,
                min_size: min,
                max_size: max,
                max_attempts: 1_000_000,
                node_guard: None,
            },
            seed,
            precision: crate::radicals::DEFAULT_PRECISION,
        }
    }
}

/// Random stream of the `index`-th sample of a batch seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(index))
}

/// Uniform integer in `[0, bound)` by rejection on whole bytes.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: &Integer) -> Integer {
    assert!(*bound > 0, "empty range");
    let bits = bound.significant_bits() as usize;
    let len = bits.div_ceil(8);
    let mask = 0xffu8 >> (len * 8 - bits);
    let mut buf = vec![0u8; len];
    loop {
        rng.fill_bytes(&mut buf);
        buf[len - 1] &= mask;
        let v = Integer::from_digits(&buf, Order::Lsf);
        if v < *bound {
            return v;
        }
    }
}

/// Draws `count` terms as described by `spec`, sample `i` on stream `i`.
pub fn sample_batch(spec: &SamplerSpec, count: usize) -> Result<Vec<crate::Term>, SampleError> {
    use rayon::prelude::*;
    match &spec.method {
        Method::Recursive => {
            let s = RecursiveSampler::new(spec.family, spec.size)?;
            Ok((0..count as u64).into_par_iter().map(|i| s.sample(&mut stream(spec.seed, i))).collect())
        }
        Method::Boltzmann { tuning, min_size, max_size, max_attempts, node_guard } => {
            let s = BoltzmannSampler::new(spec.family, tuning, spec.precision)?;
            let guard = node_guard.unwrap_or(max_size.saturating_mul(50));
            (0..count as u64)
                .into_par_iter()
                .map(|i| {
                    s.sample_window(&mut stream(spec.seed, i), *min_size, *max_size, guard, *max_attempts)
                        .map(|(t, _)| t)
                })
                .collect()
        }
    }
}
