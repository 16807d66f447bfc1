use serde::{Deserialize, Serialize};

use super::estimator::run_batches;
use super::sampler::SimplexSampler;
use super::IntegrationConfig;
use crate::error::{Error, Result};

/// How the simplex side of `1/ΠA_i = (N−1)! ∫ δ(1−Σa) da / (Σ a_i A_i)^N`
/// is evaluated.
#[derive(Clone, Debug)]
pub enum TrickMethod {
    MonteCarlo(IntegrationConfig),
    /// Adaptive Simpson on `[0, 1]`; only for `N = 2`.
    Quadrature {
        tolerance: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeynmanTrickCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// Standard error of `rhs`, zero for quadrature.
    pub rhs_std_error: f64,
    pub relative_gap: f64,
}

impl FeynmanTrickCheck {
    /// `|lhs − rhs|` in units of the Monte Carlo error.
    pub fn gap_in_sigmas(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs_std_error
    }
}

pub fn feynman_trick_check(values: &[f64], method: &TrickMethod) -> Result<FeynmanTrickCheck> {
    let n = values.len();
    if n < 2 || n % 2 == 1 {
        return Err(Error::Structural(format!(
            "need an even number N = 2n + 2 of denominators, got {n}"
        )));
    }
    if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::Validation(format!("denominators must be positive, got {v}")));
    }
    let lhs = 1.0 / values.iter().product::<f64>();
    let factorial: f64 = (1..n).map(|k| k as f64).product();
    let (rhs, rhs_std_error) = match method {
        TrickMethod::Quadrature { tolerance } => {
            if n != 2 {
                return Err(Error::Validation("quadrature is only implemented for N = 2".into()));
            }
            let (a, b) = (values[0], values[1]);
            let f = |t: f64| 1.0 / (t * a + (1.0 - t) * b).powi(2);
            (adaptive_simpson(&f, 0.0, 1.0, *tolerance), 0.0)
        }
        TrickMethod::MonteCarlo(cfg) => {
            cfg.validate()?;
            let sampler = SimplexSampler::new(n, cfg.concentration)?;
            let stats = run_batches(
                cfg,
                || vec![0.0; n],
                |a, rng| {
                    let density = sampler.sample(rng, a);
                    let s: f64 = a.iter().zip(values).map(|(x, v)| x * v).sum();
                    Ok(1.0 / (s.powi(n as i32) * density))
                },
            )?;
            (factorial * stats.mean(), factorial * stats.std_error())
        }
    };
    Ok(FeynmanTrickCheck {
        lhs,
        rhs,
        rhs_std_error,
        relative_gap: (rhs - lhs).abs() / lhs,
    })
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}
