//! Sparse multivariate polynomials with exact Gaussian-rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gaussian::{format_gaussian, is_real, to_f64, GaussianRational};
use crate::error::{Error, Result};

/// Exponent vector. Ordered by total degree, then lexicographically, so the
/// largest monomial under `Ord` is printed first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `nvars` variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, GaussianRational::one())
    }

    /// The variable `x_index` (zero-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        let mut e = vec![0; nvars];
        e[index] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial(e), GaussianRational::one());
        p
    }

    /// `Σ coeffs[i] x_i`.
    pub fn linear(coeffs: &[GaussianRational]) -> Self {
        let nvars = coeffs.len();
        let mut p = MultiPoly::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = 1;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, GaussianRational)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn add_term(&mut self, monomial: Monomial, coeff: GaussianRational) {
        debug_assert_eq!(monomial.0.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&monomial) {
            Some(existing) => {
                *existing += coeff;
                if existing.is_zero() {
                    self.terms.remove(&monomial);
                }
            }
            None => {
                self.terms.insert(monomial, coeff);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> GaussianRational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Highest total degree over the stored terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms, or `None` if the polynomial is zero or
    /// not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(is_real)
    }

    pub fn scale(&self, c: &GaussianRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.nvars, "evaluation point dimension mismatch");
        let mut total = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    value *= x;
                }
            }
            total += value;
        }
        total
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars, "evaluation point dimension mismatch");
        self.terms
            .iter()
            .map(|(m, c)| {
                let coeff = super::gaussian::to_complex64(c);
                m.0.iter().zip(point).fold(coeff, |acc, (&e, x)| acc * x.powu(e))
            })
            .sum()
    }

    /// Lowers a real polynomial to a float evaluator for hot loops.
    pub fn compile_real(&self) -> Result<RealPoly> {
        if !self.is_real() {
            return Err(Error::Validation("polynomial has non-real coefficients".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let factors =
                    m.0.iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(v, &e)| (v as u16, e as i32))
                        .collect();
                (to_f64(&c.re), factors)
            })
            .collect();
        Ok(RealPoly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn display_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> =
                m.0.iter()
                    .zip(names)
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, name)| if e == 1 { name.clone() } else { format!("{name}^{e}") })
                    .collect();
            let (negative, magnitude) = if c.im.is_zero() && c.re < num_traits::zero() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let coeff = format_gaussian(&magnitude);
            if mono.is_empty() {
                out.push_str(&coeff);
            } else {
                if !magnitude.is_one() {
                    out.push_str(&coeff);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    /// Formats with variable names `{prefix}1 .. {prefix}N`.
    pub fn display_vars(&self, prefix: &str) -> String {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("{prefix}{i}")).collect();
        self.display_with(&names)
    }

    fn check_compatible(&self, other: &MultiPoly) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable sets");
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_vars("a"))
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compatible(rhs);
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Float evaluator for a real polynomial.
#[derive(Clone, Debug)]
pub struct RealPoly {
    nvars: usize,
    terms: Vec<(f64, Vec<(u16, i32)>)>,
}

impl RealPoly {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(c, factors)| factors.iter().fold(*c, |acc, &(v, e)| acc * point[v as usize].powi(e)))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::{gaussian_int, int, rational, real};

    fn a(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn arithmetic_cancels_and_never_stores_zero() {
        let p = &a(0) + &a(1);
        let q = &p - &a(1);
        assert_eq!(q, a(0));
        let zero = &p - &p;
        assert!(zero.is_zero());
        assert_eq!(zero.homogeneous_degree(), None);
    }

    #[test]
    fn square_of_sum() {
        let s = &(&a(0) + &a(1)) + &a(2);
        let sq = s.pow(2);
        assert_eq!(sq.len(), 6);
        assert_eq!(sq.coefficient(&[1, 1, 0]), gaussian_int(2, 0));
        assert_eq!(sq.coefficient(&[2, 0, 0]), gaussian_int(1, 0));
        assert_eq!(sq.homogeneous_degree(), Some(2));
    }

    #[test]
    fn evaluation_matches_between_exact_and_float() {
        let p = &(&a(0) * &a(1)).scale(&real(rational(3, 2))) - &a(2).pow(3);
        let pt = [real(int(2)), real(rational(1, 3)), gaussian_int(1, 1)];
        let exact = p.eval(&pt);
        let fpt: Vec<Complex64> = pt.iter().map(super::super::gaussian::to_complex64).collect();
        let float = p.eval_complex(&fpt);
        let expected = super::super::gaussian::to_complex64(&exact);
        assert!((float - expected).norm() < 1e-12);
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let p = &(&a(2) + &a(0).pow(2)) - &a(0).scale(&real(rational(1, 2)));
        assert_eq!(p.to_string(), "a1^2 - 1/2*a1 + a3");
        assert_eq!(MultiPoly::one(3).to_string(), "1");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn compiled_real_poly_evaluates() {
        let p = &(&a(0) * &a(1)) + &a(2).scale(&real(int(-4)));
        let c = p.compile_real().unwrap();
        assert!((c.eval(&[2.0, 3.0, 0.5]) - 4.0).abs() < 1e-15);
        let complex = a(0).scale(&gaussian_int(0, 1));
        assert!(complex.compile_real().is_err());
    }
}
