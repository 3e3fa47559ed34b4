//! Seeded random rational points.

use exactalg::Rat;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::moduli::{invariants, InvariantPoint, ParamPoint};

/// Numerators and denominators are drawn from `[-BOUND, BOUND] \ {0}`.
const BOUND: i64 = 50;

/// A uniformly random nonzero integer in `[-BOUND, BOUND]`.
fn nonzero_int(rng: &mut ChaCha8Rng) -> i64 {
    let k = rng.gen_range(1..=2 * BOUND);
    if k > BOUND {
        BOUND - k
    } else {
        k
    }
}

/// A random nonzero rational `n/d` with `n, d ∈ [-50, 50] \ {0}`.
pub fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let n = nonzero_int(rng);
    let d = nonzero_int(rng);
    exactalg::rat(n, d)
}

/// A random admissible sextuple (every entry nonzero).
pub fn random_params(rng: &mut ChaCha8Rng) -> ParamPoint {
    ParamPoint::new(std::array::from_fn(|_| random_rat(rng)))
}

/// Deterministic source of random points for one run.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rat(&mut self) -> Rat {
        random_rat(&mut self.rng)
    }

    pub fn params(&mut self) -> ParamPoint {
        random_params(&mut self.rng)
    }

    /// Invariants of a random sextuple, so that 𝔞 is rational.
    pub fn invariants(&mut self) -> InvariantPoint {
        invariants(&self.params()).expect("random sextuples have nonzero entries")
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_nonzero_bounded_and_reproducible() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..500 {
            let x = a.rat();
            assert_eq!(x, b.rat());
            assert!(!x.is_zero());
            assert!(x.abs() <= Rat::from_int(BOUND));
            assert!(x.abs() >= exactalg::rat(1, BOUND));
        }
    }
}
