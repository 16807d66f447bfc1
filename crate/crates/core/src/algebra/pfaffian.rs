//! Pfaffians of alternating matrices.
//!
//! Sign convention: `Pf([[0, a], [-a, 0]]) = a`, extended by expansion along
//! the first row, `Pf(A) = Σ_{j>0} (-1)^{j+1} A_{0j} Pf(A_{\hat 0 \hat j})`.
//! This is the perfect-matching expansion with crossing-number signs. The
//! numeric Parlett–Reid routine follows the same convention.

use num_complex::Complex64;

use super::gaussian::GaussianRational;
use super::matrix::{AlternatingForm, Matrix};
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Numeric pfaffian by Parlett–Reid tridiagonalization with partial pivoting.
pub fn pfaffian_numeric(form: &AlternatingForm<Complex64>) -> Result<Complex64> {
    let n = form.dim();
    if n % 2 == 1 {
        return Err(Error::Structural(format!("pfaffian of odd dimension {n}")));
    }
    let mut work = form.matrix().as_slice().to_vec();
    Ok(pfaffian_in_place(&mut work, n))
}

/// Parlett–Reid on a row-major `n × n` buffer, which is overwritten.
///
/// The caller guarantees `n` is even and the buffer is antisymmetric.
pub fn pfaffian_in_place(a: &mut [Complex64], n: usize) -> Complex64 {
    debug_assert_eq!(a.len(), n * n);
    debug_assert!(n % 2 == 0);
    let zero = Complex64::new(0.0, 0.0);
    let mut pf = Complex64::new(1.0, 0.0);
    let mut k = 0;
    while k + 1 < n {
        let mut kp = k + 1;
        let mut best = a[(k + 1) * n + k].norm();
        for i in k + 2..n {
            let v = a[i * n + k].norm();
            if v > best {
                best = v;
                kp = i;
            }
        }
        if kp != k + 1 {
            for j in 0..n {
                a.swap((k + 1) * n + j, kp * n + j);
            }
            for i in 0..n {
                a.swap(i * n + k + 1, i * n + kp);
            }
            pf = -pf;
        }
        let pivot = a[k * n + k + 1];
        if pivot == zero {
            return zero;
        }
        pf *= pivot;
        if k + 2 < n {
            // A[k+2.., k+2..] += τ ⊗ A[k+2.., k+1] − A[k+2.., k+1] ⊗ τ, τ = A[k, k+2..] / pivot.
            let inv = Complex64::new(1.0, 0.0) / pivot;
            for i in k + 2..n {
                let tau_i = a[k * n + i] * inv;
                let col_i = a[i * n + k + 1];
                for j in k + 2..n {
                    let tau_j = a[k * n + j] * inv;
                    let col_j = a[j * n + k + 1];
                    a[i * n + j] += tau_i * col_j - col_i * tau_j;
                }
            }
        }
        k += 2;
    }
    pf
}

/// Minimal ring interface needed by the matching expansion.
pub trait PfaffianRing: Clone {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl PfaffianRing for GaussianRational {
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl PfaffianRing for MultiPoly {
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl PfaffianRing for Complex64 {
    fn is_zero(&self) -> bool {
        *self == Complex64::new(0.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Perfect-matching expansion of the pfaffian of an antisymmetric matrix
/// over any commutative ring. `one` is the ring's unit; `(2k−1)!!` terms.
pub fn pfaffian_expansion<T: PfaffianRing>(m: &Matrix<T>, one: &T) -> Result<T> {
    if !m.is_square() {
        return Err(Error::Structural("pfaffian of a non-square matrix".into()));
    }
    let n = m.rows();
    if n % 2 == 1 {
        return Err(Error::Structural(format!("pfaffian of odd dimension {n}")));
    }
    let zero = one.sub(one);
    let remaining: Vec<usize> = (0..n).collect();
    Ok(expand(m, &remaining, one, &zero))
}

fn expand<T: PfaffianRing>(m: &Matrix<T>, remaining: &[usize], one: &T, zero: &T) -> T {
    if remaining.is_empty() {
        return one.clone();
    }
    let first = remaining[0];
    let mut acc = zero.clone();
    for (pos, &j) in remaining.iter().enumerate().skip(1) {
        let entry = &m[(first, j)];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = remaining[1..].iter().copied().filter(|&r| r != j).collect();
        let term = entry.mul(&expand(m, &rest, one, zero));
        // position `pos` in the remaining list gives sign (-1)^(pos+1)
        acc = if pos % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Exact pfaffian of an alternating form with Gaussian-rational entries.
pub fn pfaffian_exact(form: &AlternatingForm<GaussianRational>) -> Result<GaussianRational> {
    pfaffian_expansion(form.matrix(), &num_traits::One::one())
}

/// `Pf(Σ_i a_i Q_i)` as an exact polynomial in `a_1 .. a_N`, `N = forms.len()`.
pub fn pfaffian_symbolic(forms: &[AlternatingForm<GaussianRational>]) -> Result<MultiPoly> {
    let Some(first) = forms.first() else {
        return Err(Error::Structural("no forms supplied".into()));
    };
    let dim = first.dim();
    if forms.iter().any(|f| f.dim() != dim) {
        return Err(Error::Structural("forms have different dimensions".into()));
    }
    if dim % 2 == 1 {
        return Err(Error::Structural(format!("pfaffian of odd dimension {dim}")));
    }
    let nvars = forms.len();
    let summed = Matrix::from_fn(dim, dim, |i, j| {
        let coeffs: Vec<GaussianRational> = forms.iter().map(|f| f.entry(i, j).clone()).collect();
        MultiPoly::linear(&coeffs)
    });
    pfaffian_expansion(&summed, &MultiPoly::one(nvars))
}
