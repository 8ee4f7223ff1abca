//! Memoryless binary symmetric channel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ChannelError {
    #[error("crossover probability {0} outside [0, 1/2)")]
    Crossover(f64),
}

/// BSC with crossover `p`. Every call to [`Bsc::transmit`] draws from its own
/// ChaCha stream, indexed by the call counter, so outputs depend only on the
/// seed, the trial index and the number of earlier calls.
#[derive(Debug, Clone, PartialEq)]
pub struct Bsc {
    p: f64,
    seed: u64,
    trial: Option<u64>,
    calls: u64,
}

impl Bsc {
    pub fn new(p: f64, seed: u64) -> Result<Self, ChannelError> {
        if !(0.0..0.5).contains(&p) {
            return Err(ChannelError::Crossover(p));
        }
        Ok(Bsc {
            p,
            seed,
            trial: None,
            calls: 0,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent channel for one Monte Carlo trial. The ChaCha key packs
    /// the seed and the trial index, so distinct pairs never share a stream.
    pub fn for_trial(&self, trial: u64) -> Bsc {
        Bsc {
            p: self.p,
            seed: self.seed,
            trial: Some(trial),
            calls: 0,
        }
    }

    fn key(&self) -> [u8; 32] {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        if let Some(t) = self.trial {
            key[8..16].copy_from_slice(&t.to_le_bytes());
            key[16] = 1;
        }
        key
    }

    pub fn transmit(&mut self, word: &[bool]) -> Vec<bool> {
        let mut rng = ChaCha8Rng::from_seed(self.key());
        rng.set_stream(self.calls);
        self.calls += 1;
        if self.p == 0.0 {
            return word.to_vec();
        }
        word.iter().map(|&b| b ^ rng.gen_bool(self.p)).collect()
    }

    pub fn capacity(&self) -> f64 {
        capacity(self.p).expect("p validated at construction")
    }
}

/// `C = 1 - h2(p)`.
pub fn capacity(p: f64) -> Result<f64, ChannelError> {
    analysis::bsc_capacity(p).map_err(|_| ChannelError::Crossover(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_is_identity() {
        let mut ch = Bsc::new(0.0, 9).unwrap();
        let w: Vec<bool> = (0..100).map(|i| i % 3 == 0).collect();
        assert_eq!(ch.transmit(&w), w);
    }

    #[test]
    fn flip_rate_concentrates() {
        let mut ch = Bsc::new(0.11, 1).unwrap();
        let n = 1_000_000;
        let flips = ch.transmit(&vec![false; n]).iter().filter(|&&b| b).count() as f64;
        let sd = (n as f64 * 0.11 * 0.89).sqrt();
        assert!((flips - 0.11 * n as f64).abs() < 3.0 * sd, "{flips}");
    }

    #[test]
    fn deterministic_per_seed_and_call() {
        let w = vec![false; 256];
        let mut a = Bsc::new(0.3, 5).unwrap();
        let mut b = Bsc::new(0.3, 5).unwrap();
        let a1 = a.transmit(&w);
        assert_eq!(a1, b.transmit(&w));
        assert_ne!(a1, a.transmit(&w));
        assert_ne!(a1, Bsc::new(0.3, 5).unwrap().for_trial(1).transmit(&w));
    }

    #[test]
    fn capacity_endpoints() {
        assert_eq!(capacity(0.0).unwrap(), 1.0);
        assert_eq!(capacity(0.5).unwrap(), 0.0);
        assert!((capacity(0.11).unwrap() - 0.5000).abs() < 1e-4);
        assert!(Bsc::new(0.5, 0).is_err());
        assert!(Bsc::new(-0.1, 0).is_err());
    }
}
