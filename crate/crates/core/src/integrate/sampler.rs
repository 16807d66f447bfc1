use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma, StandardNormal};

use super::MomentumDensity;
use crate::error::{Error, Result};

/// Dirichlet(β, …, β) points on the `(N−1)`-simplex. `sample` returns the
/// density with respect to `da₁ … da_{N−1}`.
#[derive(Clone, Debug)]
pub struct SimplexSampler {
    dim: usize,
    concentration: f64,
    log_norm: f64,
    gamma: Gamma<f64>,
}

impl SimplexSampler {
    pub fn new(dim: usize, concentration: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Structural(
                "simplex sampling needs at least two variables".into(),
            ));
        }
        let gamma =
            Gamma::new(concentration, 1.0).map_err(|e| Error::Validation(format!("Dirichlet concentration: {e}")))?;
        let log_norm = libm::lgamma(dim as f64 * concentration) - dim as f64 * libm::lgamma(concentration);
        Ok(SimplexSampler {
            dim,
            concentration,
            log_norm,
            gamma,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) -> f64 {
        debug_assert_eq!(out.len(), self.dim);
        let mut total = 0.0;
        for a in out.iter_mut() {
            *a = self.gamma.sample(rng);
            total += *a;
        }
        let mut log_density = self.log_norm;
        for a in out.iter_mut() {
            *a /= total;
            log_density += (self.concentration - 1.0) * a.ln();
        }
        log_density.exp()
    }
}

/// Independent importance density for each loop momentum `k ∈ ℝ⁴`.
#[derive(Clone, Debug)]
pub struct LoopMomentumSampler {
    n_loops: usize,
    scale: f64,
    kind: MomentumDensity,
}

impl LoopMomentumSampler {
    pub fn new(n_loops: usize, scale: f64, kind: MomentumDensity) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::Validation("importance scale must be positive".into()));
        }
        Ok(LoopMomentumSampler { n_loops, scale, kind })
    }

    /// Density of one loop momentum.
    pub fn density(&self, k: &[f64; 4]) -> f64 {
        let s = self.scale;
        match self.kind {
            MomentumDensity::StudentT => {
                let r2 = k.iter().map(|x| x * x).sum::<f64>() / (s * s);
                2.0 / (PI * PI * s.powi(4)) / (1.0 + r2).powi(3)
            }
            MomentumDensity::Cauchy => k.iter().map(|x| 1.0 / (PI * s * (1.0 + (x / s).powi(2)))).product(),
        }
    }

    /// Fills `out` with `n` loop momenta and returns their joint density.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [[f64; 4]]) -> f64 {
        debug_assert_eq!(out.len(), self.n_loops);
        let mut density = 1.0;
        for k in out.iter_mut() {
            match self.kind {
                MomentumDensity::StudentT => {
                    // Gaussian direction over the square root of an Exp(1)
                    // variate: multivariate t with two degrees of freedom.
                    let e: f64 = Exp1.sample(rng);
                    let factor = self.scale / (2.0 * e).sqrt();
                    for x in k.iter_mut() {
                        let z: f64 = StandardNormal.sample(rng);
                        *x = z * factor;
                    }
                }
                MomentumDensity::Cauchy => {
                    for x in k.iter_mut() {
                        let u: f64 = rng.random();
                        *x = self.scale * (PI * (u - 0.5)).tan();
                    }
                }
            }
            density *= self.density(k);
        }
        density
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn uniform_simplex_density_is_inverse_volume() {
        let s = SimplexSampler::new(4, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut a = [0.0; 4];
        let d = s.sample(&mut rng, &mut a);
        assert!((d - 6.0).abs() < 1e-12);
        assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dirichlet_weights_integrate_simplex_volume() {
        let s = SimplexSampler::new(4, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut a = [0.0; 4];
        let n = 200_000;
        let mean: f64 = (0..n).map(|_| 1.0 / s.sample(&mut rng, &mut a)).sum::<f64>() / n as f64;
        assert!((mean - 1.0 / 6.0).abs() < 0.01 / 6.0, "{mean}");
    }

    #[test]
    fn momentum_densities_are_normalized() {
        // E_p[1_{|k|<R} / p] estimates the 4-ball volume π² R⁴ / 2
        for kind in [MomentumDensity::StudentT, MomentumDensity::Cauchy] {
            let s = LoopMomentumSampler::new(1, 0.7, kind).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            let mut k = [[0.0; 4]];
            let n = 400_000;
            let r = 1.3_f64;
            let mut acc = 0.0;
            for _ in 0..n {
                let d = s.sample(&mut rng, &mut k);
                if k[0].iter().map(|x| x * x).sum::<f64>() < r * r {
                    acc += 1.0 / d;
                }
            }
            let vol = PI * PI * r.powi(4) / 2.0;
            assert!((acc / n as f64 - vol).abs() < 0.02 * vol, "{kind:?}");
        }
    }
}
