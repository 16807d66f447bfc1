use serde::{Deserialize, Serialize};

use super::amplitude::{direct_amplitude, parametric_amplitude, pfaffian_amplitude};
use super::{IntegrationConfig, IntegrationResult};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Estimates noisier than this are not turned into constants.
pub const MAX_RELATIVE_ERROR: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantEstimate {
    pub value: f64,
    pub std_error: f64,
}

impl ConstantEstimate {
    /// Ratio of two independent estimates with first-order error propagation.
    pub fn ratio(num: &IntegrationResult, den: &IntegrationResult) -> Result<Self> {
        for r in [num, den] {
            let rel = r.relative_error();
            if !(rel <= MAX_RELATIVE_ERROR) {
                return Err(Error::InsufficientPrecision {
                    rel_err: rel,
                    limit: MAX_RELATIVE_ERROR,
                });
            }
        }
        let value = num.estimate / den.estimate;
        let rel = num.relative_error().hypot(den.relative_error());
        Ok(ConstantEstimate {
            value,
            std_error: value.abs() * rel,
        })
    }

    /// `|self − other|` in combined standard errors.
    pub fn sigmas_from(&self, other: &ConstantEstimate) -> f64 {
        (self.value - other.value).abs() / self.std_error.hypot(other.std_error)
    }

    pub fn sigmas_from_value(&self, value: f64) -> f64 {
        (self.value - value).abs() / self.std_error
    }
}

/// `c = direct / parametric` and `C = direct / pfaffian`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeConstants {
    pub direct: IntegrationResult,
    pub parametric: IntegrationResult,
    pub pfaffian: IntegrationResult,
    pub c_hat: ConstantEstimate,
    #[serde(rename = "C_hat")]
    pub big_c_hat: ConstantEstimate,
}

pub fn constants_from_results(
    direct: IntegrationResult,
    parametric: IntegrationResult,
    pfaffian: IntegrationResult,
) -> Result<AmplitudeConstants> {
    let c_hat = ConstantEstimate::ratio(&direct, &parametric)?;
    let big_c_hat = ConstantEstimate::ratio(&direct, &pfaffian)?;
    Ok(AmplitudeConstants {
        direct,
        parametric,
        pfaffian,
        c_hat,
        big_c_hat,
    })
}

pub fn extract_constants(g: &Graph, cfg: &IntegrationConfig) -> Result<AmplitudeConstants> {
    constants_from_results(
        direct_amplitude(g, cfg)?,
        parametric_amplitude(g, cfg)?,
        pfaffian_amplitude(g, cfg)?,
    )
}
