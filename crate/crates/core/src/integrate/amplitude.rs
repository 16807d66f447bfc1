use std::time::Instant;

use num_complex::Complex64;
use num_traits::Zero;

use super::estimator::run_batches;
use super::sampler::{LoopMomentumSampler, SimplexSampler};
use super::{IntegrationConfig, IntegrationResult, Method};
use crate::algebra::gaussian::to_f64;
use crate::algebra::pfaffian::pfaffian_in_place;
use crate::algebra::poly::RealPoly;
use crate::error::{Error, Result};
use crate::graph::{cycle_basis, route_momenta, Graph};
use crate::symanzik::{first_symanzik_det, second_symanzik};
use crate::twistor::build_propagator_forms;

pub fn integrate(g: &Graph, method: Method, cfg: &IntegrationConfig) -> Result<IntegrationResult> {
    match method {
        Method::Direct => direct_amplitude(g, cfg),
        Method::Parametric => parametric_amplitude(g, cfg),
        Method::Pfaffian => pfaffian_amplitude(g, cfg),
    }
}

fn check_preconditions(g: &Graph, cfg: &IntegrationConfig) -> Result<()> {
    cfg.validate()?;
    g.require_twistor_topology()?;
    if let Some(e) = g.edges().iter().find(|e| e.mass.is_zero()) {
        return Err(Error::ConvergenceRisk(format!(
            "edge {:?} is massless; the amplitude is not absolutely convergent",
            e.id
        )));
    }
    Ok(())
}

/// Projective integrands `Ω / D²` need `deg D = N / 2`.
fn check_projective_weight(n_edges: usize, denominator_degree: Option<u32>) -> Result<()> {
    match denominator_degree {
        Some(d) if 2 * d as usize == n_edges => Ok(()),
        other => Err(Error::InvariantViolation(format!(
            "integrand is not homogeneous of degree 0 (denominator degree {other:?}, {n_edges} edges)"
        ))),
    }
}

fn geometric_mean_mass(g: &Graph) -> f64 {
    let logs: f64 = g.edges().iter().map(|e| to_f64(&e.mass).ln()).sum();
    (logs / g.n_edges() as f64).exp()
}

fn finish(method: Method, cfg: &IntegrationConfig, stats: super::RunningStats, start: Instant) -> IntegrationResult {
    IntegrationResult {
        method,
        estimate: stats.mean(),
        std_error: stats.std_error(),
        n_samples: stats.count(),
        seed: cfg.seed,
        wall_time_s: start.elapsed().as_secs_f64(),
    }
}

/// `∫_{ℝ^{4n}} d^{4n}x / Π_e ((Σ_k α_k(e) x_k + s_e)² + m_e²)`.
pub fn direct_amplitude(g: &Graph, cfg: &IntegrationConfig) -> Result<IntegrationResult> {
    check_preconditions(g, cfg)?;
    let start = Instant::now();
    let basis = cycle_basis(g);
    let routing = route_momenta(g);
    let n = basis.n_loops();
    let alphas: Vec<Vec<f64>> = (0..g.n_edges())
        .map(|e| basis.column(e).into_iter().map(|a| a as f64).collect())
        .collect();
    let shifts = routing.shifts_f64();
    let masses_sq: Vec<f64> = g.masses_squared().iter().map(to_f64).collect();
    let scale = cfg.scale.unwrap_or_else(|| geometric_mean_mass(g));
    let sampler = LoopMomentumSampler::new(n, scale, cfg.momentum_density)?;

    let stats = run_batches(
        cfg,
        || vec![[0.0; 4]; n],
        |k, rng| {
            let density = sampler.sample(rng, k);
            let mut product = 1.0;
            for e in 0..alphas.len() {
                let mut p = shifts[e];
                for (alpha, km) in alphas[e].iter().zip(k.iter()) {
                    if *alpha != 0.0 {
                        for mu in 0..4 {
                            p[mu] += alpha * km[mu];
                        }
                    }
                }
                product *= p.iter().map(|x| x * x).sum::<f64>() + masses_sq[e];
            }
            Ok(1.0 / (product * density))
        },
    )?;
    Ok(finish(Method::Direct, cfg, stats, start))
}

/// `∫ δ(1 − Σa) da / S₂(a)²`.
pub fn parametric_amplitude(g: &Graph, cfg: &IntegrationConfig) -> Result<IntegrationResult> {
    check_preconditions(g, cfg)?;
    let start = Instant::now();
    let basis = cycle_basis(g);
    let s2 = second_symanzik(g, &basis)?.s2;
    check_projective_weight(g.n_edges(), s2.homogeneous_degree())?;
    let s2 = s2.compile_real()?;
    let sampler = SimplexSampler::new(g.n_edges(), cfg.concentration)?;
    let stats = run_batches(
        cfg,
        || vec![0.0; g.n_edges()],
        |a, rng| {
            let density = sampler.sample(rng, a);
            let v = s2.eval(a);
            if !(v > 0.0) {
                return Err(Error::InvariantViolation(format!(
                    "S2 = {v:e} is not positive at interior point {a:?}"
                )));
            }
            Ok(1.0 / (v * v * density))
        },
    )?;
    Ok(finish(Method::Parametric, cfg, stats, start))
}

/// `∫ δ(1 − Σa) da / |Pf(Σ_e a_e Q_e)|²` with a numeric pfaffian per sample.
pub fn pfaffian_amplitude(g: &Graph, cfg: &IntegrationConfig) -> Result<IntegrationResult> {
    check_preconditions(g, cfg)?;
    let start = Instant::now();
    let basis = cycle_basis(g);
    let routing = route_momenta(g);
    let forms: Vec<Vec<Complex64>> = build_propagator_forms(g, &basis, &routing)?
        .iter()
        .map(|p| p.form.to_complex().matrix().as_slice().to_vec())
        .collect();
    let dim = 2 * basis.n_loops() + 2;
    // every entry of Σ a_e Q_e is linear in a, so the pfaffian has degree dim / 2
    check_projective_weight(g.n_edges(), Some((dim / 2) as u32))?;
    let sampler = SimplexSampler::new(g.n_edges(), cfg.concentration)?;
    let stats = run_batches(
        cfg,
        || (vec![0.0; g.n_edges()], vec![Complex64::new(0.0, 0.0); dim * dim]),
        |(a, m), rng| {
            let density = sampler.sample(rng, a);
            m.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
            for (ae, q) in a.iter().zip(&forms) {
                for (x, y) in m.iter_mut().zip(q) {
                    *x += y * ae;
                }
            }
            let pf = pfaffian_in_place(m, dim);
            let pf2 = pf.norm_sqr();
            if !(pf2 > 0.0 && pf2.is_finite()) {
                return Err(Error::InvariantViolation(format!(
                    "pfaffian vanishes at interior point {a:?}"
                )));
            }
            Ok(1.0 / (pf2 * density))
        },
    )?;
    Ok(finish(Method::Pfaffian, cfg, stats, start))
}

/// Integrand `1 / S₁(a)²` of the log-divergent case `N = 2n`, in the gauge
/// `Σ a = 1`. Only the integrand is provided; convergence is not checked.
#[derive(Clone, Debug)]
pub struct LogDivergentIntegrand {
    s1: RealPoly,
}

impl LogDivergentIntegrand {
    pub fn eval(&self, a: &[f64]) -> f64 {
        let v = self.s1.eval(a);
        1.0 / (v * v)
    }

    pub fn n_edges(&self) -> usize {
        self.s1.nvars()
    }
}

pub fn log_divergent_integrand(g: &Graph) -> Result<LogDivergentIntegrand> {
    let n = g.loop_number();
    if g.n_edges() != 2 * n || n == 0 {
        return Err(Error::UnsupportedTopology {
            edges: g.n_edges(),
            loops: n,
        });
    }
    let s1 = first_symanzik_det(g, &cycle_basis(g))?;
    check_projective_weight(g.n_edges(), s1.homogeneous_degree())?;
    Ok(LogDivergentIntegrand { s1: s1.compile_real()? })
}
