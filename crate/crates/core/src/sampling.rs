//! Seeded multinomial shot sampling.
//!
//! Every configuration draws from its own ChaCha8 stream seeded with
//! `seed ^ config_index`, so results do not depend on execution order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::measurement::OutcomeDistribution;

pub fn derive_seed(base: u64, index: u64) -> u64 {
    base ^ index
}

/// SplitMix64 finaliser; spreads nearby trial indices over the seed space.
pub fn mix_seed(base: u64, stream: u64) -> u64 {
    let mut z = base.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Multinomial draw as a chain of conditional binomials.
pub fn multinomial<R: Rng + ?Sized>(rng: &mut R, shots: u64, probs: &[f64]) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; probs.len()];
    let mut remaining = shots;
    let mut mass = 1.0f64;
    for (i, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if i + 1 == probs.len() {
            counts[i] = remaining;
            break;
        }
        let q = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
        let k = Binomial::new(remaining, q)
            .map_err(|e| Error::InvalidDistribution(e.to_string()))?
            .sample(rng);
        counts[i] = k;
        remaining -= k;
        mass -= p;
    }
    Ok(counts)
}

/// Draws `shots` outcomes from `dist` with a generator seeded by `seed`.
pub fn sample_outcomes(dist: &OutcomeDistribution, shots: u64, seed: u64) -> Result<OutcomeDistribution> {
    if shots == 0 {
        return Err(Error::InvalidArgument("at least one shot required".into()));
    }
    let mut rng = rng_for(seed);
    let counts = multinomial(&mut rng, shots, &dist.probabilities)?;
    Ok(OutcomeDistribution { counts: Some(counts), ..dist.clone() })
}
