//! Seeded random instances.
//!
//! The random source is ChaCha8 keyed with the little-endian bytes of the
//! 64-bit seed in the first eight key bytes and zeros elsewhere. Integers in
//! `[lo, hi]` are drawn from successive `next_u64` outputs by rejection:
//! values at or above the largest multiple of the span are discarded, the
//! rest reduced modulo the span. Per chain, the length is drawn first, then
//! the requirements (a single draw for uniform chains).

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use super::{Chain, ChainClass, TaskSystem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    #[serde(default)]
    pub seed: u64,
    pub num_chains: usize,
    pub processors: u32,
    pub chain_class: ChainClass,
    pub min_len: usize,
    pub max_len: usize,
    pub min_req: u32,
    pub max_req: u32,
    /// When set, chain lengths vary by this fraction around the midpoint of
    /// `[min_len, max_len]` instead of spanning the whole range.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_variation: Option<f64>,
    #[serde(default)]
    pub splitable: bool,
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.num_chains == 0 {
            return fail("num_chains must be at least 1".into());
        }
        if self.processors == 0 {
            return fail("processors must be at least 1".into());
        }
        if self.min_len == 0 || self.min_len > self.max_len {
            return fail(format!(
                "length range {}..={} must satisfy 1 <= min <= max",
                self.min_len, self.max_len
            ));
        }
        if self.min_req == 0 || self.min_req > self.max_req || self.max_req > self.processors {
            return fail(format!(
                "requirement range {}..={} must satisfy 1 <= min <= max <= {}",
                self.min_req, self.max_req, self.processors
            ));
        }
        if let Some(v) = self.phase_variation {
            if !(0.0..=1.0).contains(&v) {
                return fail(format!("phase variation {v} is outside [0, 1]"));
            }
        }
        Ok(())
    }

    /// Inclusive range chain lengths are drawn from.
    pub fn length_range(&self) -> (usize, usize) {
        match self.phase_variation {
            None => (self.min_len, self.max_len),
            Some(v) => {
                let base = (self.min_len + self.max_len) as f64 / 2.0;
                let lo = ((base * (1.0 - v)).ceil() as usize).max(1);
                let hi = ((base * (1.0 + v)).floor() as usize).max(1);
                // A fractional midpoint with zero variation yields lo > hi.
                (lo, hi.max(lo))
            }
        }
    }
}

struct Draw(ChaCha8Rng);

impl Draw {
    fn new(seed: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        Draw(ChaCha8Rng::from_seed(key))
    }

    fn inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        let span = hi - lo + 1;
        if span == 0 {
            return self.0.next_u64();
        }
        let zone = (u64::MAX / span) * span;
        loop {
            let x = self.0.next_u64();
            if x < zone {
                return lo + x % span;
            }
        }
    }
}

/// Deterministic instance for `config`; identical configs give identical systems.
pub fn generate(config: &GeneratorConfig) -> Result<TaskSystem> {
    config.validate()?;
    let mut draw = Draw::new(config.seed);
    let (len_lo, len_hi) = config.length_range();
    let (req_lo, req_hi) = (u64::from(config.min_req), u64::from(config.max_req));

    let chains = (0..config.num_chains)
        .map(|_| {
            let len = draw.inclusive(len_lo as u64, len_hi as u64) as usize;
            let mut tasks: Vec<u32> = match config.chain_class {
                ChainClass::Uniform => vec![draw.inclusive(req_lo, req_hi) as u32; len],
                _ => (0..len)
                    .map(|_| draw.inclusive(req_lo, req_hi) as u32)
                    .collect(),
            };
            match config.chain_class {
                ChainClass::NonIncreasing => tasks.sort_unstable_by(|a, b| b.cmp(a)),
                ChainClass::NonDecreasing => tasks.sort_unstable(),
                ChainClass::Uniform | ChainClass::Arbitrary => {}
            }
            Chain::new(tasks)
        })
        .collect();

    TaskSystem::new(config.processors, chains, config.splitable)
}
