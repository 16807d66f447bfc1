//! Twistor coordinates and the alternating forms `Q_e ∈ ∧²V*`.
//!
//! `V = k^{2n+2}` with basis `e₁, e₂` (the `O` block) followed by
//! `e_{2k+1}, e_{2k+2}` for loop `k = 1..n` (the `I` block). A point of
//! euclidean momentum space `ℝ^{4n}` is the 2-plane spanned by the rows
//!
//! ```text
//! (1, 0, z₁¹, z₂¹, z₁², z₂², …)
//! (0, 1, w₁¹, w₂¹, w₁², w₂², …)
//! ```
//!
//! and the propagator of edge `e` is the pairing `row₁ · Q_e · row₂ᵀ`.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::gaussian::{gaussian, real, to_complex64, GaussianRational, Rational};
use crate::algebra::matrix::{exact_rank, AlternatingForm, Matrix};
use crate::algebra::pfaffian::pfaffian_symbolic;
use crate::algebra::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::graph::{CycleBasis, FourVector, Graph, MomentumRouting};
use crate::symanzik::second_symanzik;

/// `(z₁, z₂, w₁, w₂)` coordinates of one complexified 4-vector.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistorBlock<T> {
    pub z1: T,
    pub z2: T,
    pub w1: T,
    pub w2: T,
}

/// `z₁ = x₁ + i x₂`, `z₂ = i x₃ + x₄`, `w₁ = i x₃ − x₄`, `w₂ = x₁ − i x₂`.
pub fn embed4(s: &FourVector) -> TwistorBlock<GaussianRational> {
    let [x1, x2, x3, x4] = &s.0;
    TwistorBlock {
        z1: gaussian(x1.clone(), x2.clone()),
        z2: gaussian(x4.clone(), x3.clone()),
        w1: gaussian(-x4.clone(), x3.clone()),
        w2: gaussian(x1.clone(), -x2.clone()),
    }
}

pub fn embed4_f64(x: &[f64; 4]) -> TwistorBlock<Complex64> {
    TwistorBlock {
        z1: Complex64::new(x[0], x[1]),
        z2: Complex64::new(x[3], x[2]),
        w1: Complex64::new(-x[3], x[2]),
        w2: Complex64::new(x[0], -x[1]),
    }
}

impl TwistorBlock<GaussianRational> {
    /// `z₁w₂ − z₂w₁`.
    pub fn det(&self) -> GaussianRational {
        &self.z1 * &self.w2 - &self.z2 * &self.w1
    }

    pub fn is_real_slice(&self) -> bool {
        self.w1 == -self.z2.conj() && self.w2 == self.z1.conj()
    }

    /// Inverse of [`embed4`] on the real slice.
    pub fn to_four_vector(&self) -> Option<FourVector> {
        if !self.is_real_slice() {
            return None;
        }
        Some(FourVector([
            self.z1.re.clone(),
            self.z1.im.clone(),
            self.z2.im.clone(),
            self.z2.re.clone(),
        ]))
    }
}

impl TwistorBlock<Complex64> {
    pub fn det(&self) -> Complex64 {
        self.z1 * self.w2 - self.z2 * self.w1
    }

    pub fn is_real_slice(&self, tol: f64) -> bool {
        (self.w1 + self.z2.conj()).norm() <= tol && (self.w2 - self.z1.conj()).norm() <= tol
    }
}

/// A point of the chart `Hom(O, I) ⊂ G(2, V)`, one block per loop.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistorPoint {
    pub blocks: Vec<TwistorBlock<Complex64>>,
}

impl TwistorPoint {
    pub fn from_loop_momenta(momenta: &[[f64; 4]]) -> Self {
        TwistorPoint {
            blocks: momenta.iter().map(embed4_f64).collect(),
        }
    }

    pub fn n_loops(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_real_slice(&self, tol: f64) -> bool {
        self.blocks.iter().all(|b| b.is_real_slice(tol))
    }

    /// The two rows of the 2 × (2n+2) framing with leading identity block.
    pub fn rows(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut r1 = vec![one, zero];
        let mut r2 = vec![zero, one];
        for b in &self.blocks {
            r1.extend([b.z1, b.z2]);
            r2.extend([b.w1, b.w2]);
        }
        (r1, r2)
    }
}

/// `Q_e` together with the data it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct PropagatorForm {
    pub form: AlternatingForm<GaussianRational>,
    pub edge: usize,
    pub alphas: Vec<i64>,
    pub shift: FourVector,
    pub mass: Rational,
}

impl PropagatorForm {
    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }
}

/// `Q = u ∧ w + m² e₁* ∧ e₂*` with
/// `u = z₁(s) e₁* + w₁(s) e₂* + Σ_k α_k e*_{2k+1}` and
/// `w = z₂(s) e₁* + w₂(s) e₂* + Σ_k α_k e*_{2k+2}`.
pub fn propagator_form(alphas: &[i64], shift: &FourVector, mass: &Rational) -> AlternatingForm<GaussianRational> {
    let dim = 2 * alphas.len() + 2;
    let s = embed4(shift);
    let mut u = vec![GaussianRational::zero(); dim];
    let mut w = vec![GaussianRational::zero(); dim];
    u[0] = s.z1;
    u[1] = s.w1;
    w[0] = s.z2;
    w[1] = s.w2;
    for (k, &alpha) in alphas.iter().enumerate() {
        let a = real(Rational::from_integer(alpha.into()));
        u[2 * k + 2] = a.clone();
        w[2 * k + 3] = a;
    }
    let loop_part = AlternatingForm::wedge(&u, &w).expect("equal lengths");
    let mass_part = AlternatingForm::elementary(dim, 0, 1, real(mass * mass));
    loop_part.add(&mass_part).expect("equal dimensions")
}

pub fn build_propagator_form(
    g: &Graph,
    basis: &CycleBasis,
    routing: &MomentumRouting,
    edge: usize,
) -> Result<PropagatorForm> {
    if edge >= g.n_edges() {
        return Err(Error::Validation(format!("edge index {edge} out of range")));
    }
    if basis.n_edges != g.n_edges() || routing.shifts.len() != g.n_edges() {
        return Err(Error::Structural("basis or routing does not match graph".into()));
    }
    let alphas = basis.column(edge);
    let shift = routing.shifts[edge].clone();
    let mass = g.edges()[edge].mass.clone();
    Ok(PropagatorForm {
        form: propagator_form(&alphas, &shift, &mass),
        edge,
        alphas,
        shift,
        mass,
    })
}

pub fn build_propagator_forms(g: &Graph, basis: &CycleBasis, routing: &MomentumRouting) -> Result<Vec<PropagatorForm>> {
    (0..g.n_edges())
        .map(|e| build_propagator_form(g, basis, routing, e))
        .collect()
}

/// `⟨row₁ ∧ row₂, Q⟩ = row₁ · Q · row₂ᵀ`.
pub fn pair(form: &AlternatingForm<Complex64>, point: &TwistorPoint) -> Result<Complex64> {
    if form.dim() != 2 * point.n_loops() + 2 {
        return Err(Error::Structural(format!(
            "form of dimension {} paired with a {}-loop point",
            form.dim(),
            point.n_loops()
        )));
    }
    let (r1, r2) = point.rows();
    Ok(form.pair(&r1, &r2))
}

/// Direct euclidean propagator `(Σ_k α_k x_k + s)² + m²`.
pub fn euclidean_propagator(alphas: &[i64], shift: &[f64; 4], mass: f64, loop_momenta: &[[f64; 4]]) -> f64 {
    let mut p = *shift;
    for (alpha, k) in alphas.iter().zip(loop_momenta) {
        for mu in 0..4 {
            p[mu] += *alpha as f64 * k[mu];
        }
    }
    crate::graph::square4(&p) + mass * mass
}

/// Rank of the Hessian of `ψ ↦ ⟨(e₁ + ψ(e₁)) ∧ (e₂ + ψ(e₂)), α⟩` on
/// `Hom(O, I) ≅ k^{4n}`, computed exactly.
///
/// The quadratic map is expanded symbolically in the coordinates
/// `x₃..x_{2n+2}` of `ψ(e₁)` and `y₃..y_{2n+2}` of `ψ(e₂)`; its Hessian is
/// read off the degree-two terms.
pub fn quadratic_rank_check(alpha: &AlternatingForm<GaussianRational>) -> Result<usize> {
    let dim = alpha.dim();
    if dim < 4 || dim % 2 == 1 {
        return Err(Error::Structural(format!(
            "need an even dimension 2n + 2 with n ≥ 1, got {dim}"
        )));
    }
    if alpha.matrix().as_slice().iter().all(Zero::is_zero) {
        return Err(Error::Validation("alpha must be non-zero".into()));
    }
    let m = dim - 2;
    let nvars = 2 * m;
    let mut row1 = vec![MultiPoly::zero(nvars); dim];
    let mut row2 = vec![MultiPoly::zero(nvars); dim];
    row1[0] = MultiPoly::one(nvars);
    row2[1] = MultiPoly::one(nvars);
    for i in 0..m {
        row1[i + 2] = MultiPoly::var(nvars, i);
        row2[i + 2] = MultiPoly::var(nvars, m + i);
    }
    let mut q = MultiPoly::zero(nvars);
    for i in 0..dim {
        for j in 0..dim {
            let c = alpha.entry(i, j);
            if c.is_zero() {
                continue;
            }
            q = &q + &(&row1[i] * &row2[j]).scale(c);
        }
    }
    let two = real(Rational::from_integer(2.into()));
    let mut hessian = Matrix::filled(nvars, nvars, GaussianRational::zero());
    for (mono, c) in q.terms() {
        if mono.degree() != 2 {
            continue;
        }
        let vars: Vec<usize> = mono
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(v, &e)| std::iter::repeat_n(v, e as usize))
            .collect();
        let (i, j) = (vars[0], vars[1]);
        if i == j {
            hessian[(i, i)] = c * &two;
        } else {
            hessian[(i, j)] = c.clone();
            hessian[(j, i)] = c.clone();
        }
    }
    Ok(exact_rank(&hessian))
}

/// Outcome of comparing `Pf(Σ a_e Q_e)` with `S₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct PfaffianSymanzikRatio {
    /// `Pf(a₀)² / S₂(a₀)²` at `a₀ = (1, …, 1)`.
    pub lambda_sq: GaussianRational,
    pub pfaffian: MultiPoly,
    pub s2: MultiPoly,
    /// `Pf² − λ² S₂²` vanishes identically.
    pub identity_holds: bool,
    /// Largest `|Pf² − λ²S₂²| / |λ²S₂²|` over the random rational points.
    pub max_point_residual: f64,
    pub points_checked: usize,
}

/// Builds `Pf(Σ a_e Q_e)` and `S₂` exactly and tests `Pf² = λ² S₂²`, both as
/// a polynomial identity and at `points` random rational points in the open
/// positive orthant.
pub fn pfaffian_symanzik_ratio<R: Rng + ?Sized>(
    g: &Graph,
    basis: &CycleBasis,
    routing: &MomentumRouting,
    points: usize,
    rng: &mut R,
) -> Result<PfaffianSymanzikRatio> {
    g.require_twistor_topology()?;
    let forms: Vec<AlternatingForm<GaussianRational>> = build_propagator_forms(g, basis, routing)?
        .into_iter()
        .map(|p| p.form)
        .collect();
    let pfaffian = pfaffian_symbolic(&forms)?;
    let s2 = second_symanzik(g, basis)?.s2;
    let a0 = vec![GaussianRational::one(); g.n_edges()];
    let s2_ref = s2.eval(&a0);
    if s2_ref.is_zero() {
        return Err(Error::Degenerate("S2 vanishes at the reference point".into()));
    }
    let pf_ref = pfaffian.eval(&a0);
    let lambda_sq = (&pf_ref * &pf_ref) / (&s2_ref * &s2_ref);
    let pf_sq = &pfaffian * &pfaffian;
    let rhs = (&s2 * &s2).scale(&lambda_sq);
    let identity_holds = (&pf_sq - &rhs).is_zero();

    let mut max_point_residual: f64 = 0.0;
    for _ in 0..points {
        let point: Vec<GaussianRational> = (0..g.n_edges())
            .map(|_| {
                real(Rational::new(
                    rng.random_range(1..=97i64).into(),
                    rng.random_range(1..=89i64).into(),
                ))
            })
            .collect();
        let lhs = pf_sq.eval(&point);
        let r = rhs.eval(&point);
        let diff = to_complex64(&(&lhs - &r)).norm();
        let scale = to_complex64(&r).norm();
        max_point_residual = max_point_residual.max(if scale > 0.0 { diff / scale } else { diff });
    }
    Ok(PfaffianSymanzikRatio {
        lambda_sq,
        pfaffian,
        s2,
        identity_holds,
        max_point_residual,
        points_checked: points,
    })
}

/// The form `e₁* ∧ e₂*`, which on the rows of a quaternionic framing
/// `(z⁰, …; −z̄⁰₂, z̄⁰₁, …)` evaluates to `|z₁⁰|² + |z₂⁰|²`.
pub fn compactifying_form(n_loops: usize) -> AlternatingForm<GaussianRational> {
    AlternatingForm::elementary(2 * n_loops + 2, 0, 1, GaussianRational::one())
}

/// Rows of the quaternionic framing: top row `(z₁ᵏ, z₂ᵏ)_k`, bottom row
/// `(−z̄₂ᵏ, z̄₁ᵏ)_k`, `k = 0..n`.
pub fn quaternionic_rows(z: &[(Complex64, Complex64)]) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut top = Vec::with_capacity(2 * z.len());
    let mut bottom = Vec::with_capacity(2 * z.len());
    for &(z1, z2) in z {
        top.extend([z1, z2]);
        bottom.extend([-z2.conj(), z1.conj()]);
    }
    (top, bottom)
}
