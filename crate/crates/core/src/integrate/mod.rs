//! Monte Carlo evaluation of the three amplitude representations.
//!
//! * [`direct_amplitude`]: `∫_{ℝ^{4n}} d^{4n}x / Π_e P_e(x)` with a
//!   heavy-tailed importance density per loop momentum.
//! * [`parametric_amplitude`]: `∫ δ(1 − Σa) da / S₂(a)²` over the simplex.
//! * [`pfaffian_amplitude`]: `∫ δ(1 − Σa) da / |Pf(Σ a_e Q_e)|²`.
//!
//! The simplex integrals use the affine gauge `Σ a_e = 1` with the measure
//! `da₁ … da_{N−1}`. Sampling is Dirichlet with a configurable concentration;
//! the default `1/2` keeps the variance finite when `S₁` vanishes on a face
//! of the simplex (graphs with one-vertex-reducible loops).

mod amplitude;
mod constants;
mod estimator;
mod feynman;
mod sampler;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use amplitude::{
    direct_amplitude, integrate, log_divergent_integrand, parametric_amplitude, pfaffian_amplitude,
    LogDivergentIntegrand,
};
pub use constants::{
    constants_from_results, extract_constants, AmplitudeConstants, ConstantEstimate, MAX_RELATIVE_ERROR,
};
pub use estimator::{run_batches, RunningStats};
pub use feynman::{adaptive_simpson, feynman_trick_check, FeynmanTrickCheck, TrickMethod};
pub use sampler::{LoopMomentumSampler, SimplexSampler};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Parametric,
    Pfaffian,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Direct, Method::Parametric, Method::Pfaffian];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Parametric => "parametric",
            Method::Pfaffian => "pfaffian",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Importance density for loop momenta in the direct method.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentumDensity {
    /// Isotropic 4-dimensional density `∝ (1 + k²/σ²)^{-3}` per loop.
    StudentT,
    /// Independent Cauchy coordinates with scale `σ`.
    Cauchy,
}

/// Minimum accepted sample count.
pub const MIN_SAMPLES: u64 = 1_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegrationConfig {
    pub samples: u64,
    pub seed: u64,
    pub batch_size: u64,
    /// Importance scale `σ` (energy units) for the direct method; defaults
    /// to the geometric mean of the masses.
    pub scale: Option<f64>,
    pub momentum_density: MomentumDensity,
    /// Dirichlet concentration for simplex sampling; `1` is uniform.
    pub concentration: f64,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        IntegrationConfig {
            samples: 1_000_000,
            seed: 0,
            batch_size: 10_000,
            scale: None,
            momentum_density: MomentumDensity::StudentT,
            concentration: 0.5,
        }
    }
}

impl IntegrationConfig {
    pub fn with_samples(samples: u64, seed: u64) -> Self {
        IntegrationConfig {
            samples,
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < MIN_SAMPLES {
            return Err(Error::Validation(format!(
                "sample count {} is below the minimum of {MIN_SAMPLES}",
                self.samples
            )));
        }
        if self.batch_size == 0 {
            return Err(Error::Validation("batch size must be positive".into()));
        }
        if !(self.concentration.is_finite() && self.concentration > 0.0) {
            return Err(Error::Validation("Dirichlet concentration must be positive".into()));
        }
        if let Some(s) = self.scale {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::Validation("importance scale must be positive".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegrationResult {
    pub method: Method,
    /// Energy units `E^{-4}` for `N = 2n + 2`.
    pub estimate: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub wall_time_s: f64,
}

impl IntegrationResult {
    pub fn relative_error(&self) -> f64 {
        (self.std_error / self.estimate).abs()
    }
}
