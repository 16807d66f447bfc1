use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::IntegrationConfig;
use crate::error::{Error, Result};

/// Welford accumulator for mean and variance.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunningStats {
    n: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Chan et al. pairwise combination.
    pub fn merge(&mut self, other: &RunningStats) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let (na, nb) = (self.n as f64, other.n as f64);
        self.mean += delta * nb / n as f64;
        self.m2 += other.m2 + delta * delta * na * nb / n as f64;
        self.n = n;
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        if self.n == 0 {
            return f64::INFINITY;
        }
        (self.variance() / self.n as f64).sqrt()
    }
}

/// Runs `cfg.samples` weighted samples in batches of `cfg.batch_size`.
///
/// Batch `i` draws from ChaCha8 stream `i` of `cfg.seed`, and batch
/// statistics are merged in index order, so the result does not depend on
/// thread scheduling. `init` builds per-batch scratch state.
pub fn run_batches<W, I, F>(cfg: &IntegrationConfig, init: I, weight: F) -> Result<RunningStats>
where
    I: Fn() -> W + Sync,
    F: Fn(&mut W, &mut ChaCha8Rng) -> Result<f64> + Sync,
{
    let n_batches = cfg.samples.div_ceil(cfg.batch_size);
    let batches: Vec<Result<RunningStats>> = (0..n_batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(b);
            let count = cfg.batch_size.min(cfg.samples - b * cfg.batch_size);
            let mut state = init();
            let mut stats = RunningStats::default();
            for _ in 0..count {
                let w = weight(&mut state, &mut rng)?;
                if !w.is_finite() {
                    return Err(Error::InvariantViolation(format!(
                        "non-finite sample weight {w} in batch {b}"
                    )));
                }
                stats.push(w);
            }
            Ok(stats)
        })
        .collect();
    let mut total = RunningStats::default();
    for stats in batches {
        total.merge(&stats?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_matches_sequential() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.25).collect();
        let mut seq = RunningStats::default();
        xs.iter().for_each(|&x| seq.push(x));
        let mut merged = RunningStats::default();
        for chunk in xs.chunks(77) {
            let mut part = RunningStats::default();
            chunk.iter().for_each(|&x| part.push(x));
            merged.merge(&part);
        }
        assert_eq!(seq.count(), merged.count());
        assert!((seq.mean() - merged.mean()).abs() < 1e-12);
        assert!((seq.variance() - merged.variance()).abs() < 1e-9);
    }

    #[test]
    fn batches_are_deterministic() {
        use rand::Rng;
        let cfg = IntegrationConfig {
            samples: 12_345,
            batch_size: 1000,
            ..Default::default()
        };
        let run = || run_batches(&cfg, || (), |_, rng| Ok(rng.random::<f64>())).unwrap();
        let (a, b) = (run(), run());
        assert_eq!(a, b);
        assert_eq!(a.count(), 12_345);
        assert!((a.mean() - 0.5).abs() < 5.0 * a.std_error());
    }

    #[test]
    fn non_finite_weight_aborts() {
        let cfg = IntegrationConfig::with_samples(2000, 1);
        let err = run_batches(&cfg, || (), |_, _| Ok(f64::NAN)).unwrap_err();
        assert!(matches!(err, Error::InvariantViolation(_)));
    }
}
