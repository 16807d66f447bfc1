//! Dense matrices, alternating forms, determinants and ranks.

use std::collections::HashMap;
use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gaussian::{to_complex64, GaussianRational};
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Structural("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix<Complex64> {
    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    /// LU determinant with partial pivoting.
    pub fn determinant(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::Structural("determinant of a non-square matrix".into()));
        }
        Ok(self.to_nalgebra().determinant())
    }
}

impl Matrix<GaussianRational> {
    pub fn to_complex(&self) -> Matrix<Complex64> {
        self.map(to_complex64)
    }
}

/// Numerical rank: singular values above `1e-9 * σ_max`.
pub fn numeric_rank(m: &Matrix<Complex64>) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let sv = m.to_nalgebra().singular_values();
    let max = sv.iter().cloned().fold(0.0_f64, f64::max);
    if max == 0.0 || !max.is_finite() {
        return 0;
    }
    sv.iter().filter(|&&s| s > 1e-9 * max).count()
}

/// Exact rank by Gaussian elimination over the Gaussian rationals.
pub fn exact_rank(m: &Matrix<GaussianRational>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !Zero::is_zero(&a[(r, col)])) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                a.data.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let inv = GaussianRational::one() / a[(rank, col)].clone();
        for r in rank + 1..rows {
            if Zero::is_zero(&a[(r, col)]) {
                continue;
            }
            let factor = &a[(r, col)] * &inv;
            for j in col..cols {
                let delta = &factor * &a[(rank, j)];
                a[(r, j)] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Exact determinant of a square matrix of homogeneous linear (or zero)
/// polynomial entries, by Laplace expansion memoized on the column subset.
pub fn det_symbolic(m: &Matrix<MultiPoly>) -> Result<MultiPoly> {
    if !m.is_square() {
        return Err(Error::Structural("determinant of a non-square matrix".into()));
    }
    let n = m.rows;
    if n > 24 {
        return Err(Error::Structural(format!(
            "symbolic determinant of dimension {n} is too large"
        )));
    }
    let nvars = match m.data.first() {
        Some(p) => p.nvars(),
        None => 0,
    };
    for p in &m.data {
        if p.nvars() != nvars {
            return Err(Error::Structural("entries over different variable sets".into()));
        }
        if !p.is_zero() && p.homogeneous_degree() != Some(1) {
            return Err(Error::Validation("determinant entries must be linear forms".into()));
        }
    }
    let mut memo = HashMap::new();
    Ok(minor(m, 0, (1u32 << n) - 1, nvars, &mut memo))
}

fn minor(m: &Matrix<MultiPoly>, row: usize, cols: u32, nvars: usize, memo: &mut HashMap<u32, MultiPoly>) -> MultiPoly {
    if cols == 0 {
        return MultiPoly::one(nvars);
    }
    if let Some(hit) = memo.get(&cols) {
        return hit.clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    let mut position = 0;
    for j in 0..m.cols {
        if cols & (1 << j) == 0 {
            continue;
        }
        let entry = &m[(row, j)];
        if !entry.is_zero() {
            let sub = minor(m, row + 1, cols & !(1 << j), nvars, memo);
            let term = entry * &sub;
            acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Scalars that can carry an alternating form.
pub trait FormScalar: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn antisymmetric_pair(a: &Self, b: &Self, scale: f64) -> bool;
    fn magnitude(&self) -> f64;
}

impl FormScalar for GaussianRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn antisymmetric_pair(a: &Self, b: &Self, _scale: f64) -> bool {
        Zero::is_zero(&(a + b))
    }
    fn magnitude(&self) -> f64 {
        to_complex64(self).norm()
    }
}

impl FormScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        *self == Complex64::new(0.0, 0.0)
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn antisymmetric_pair(a: &Self, b: &Self, scale: f64) -> bool {
        (a + b).norm() <= 1e-12 * scale.max(1.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// An element of `∧²V*` stored as the antisymmetric matrix `Q^{νμ}`, so that
/// `Q(x, y) = Σ x_ν Q^{νμ} y_μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlternatingForm<T> {
    matrix: Matrix<T>,
}

impl<T: FormScalar> AlternatingForm<T> {
    /// Validates antisymmetry (exact for rationals, `1e-12` relative for floats).
    pub fn new(matrix: Matrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Structural("alternating form must be square".into()));
        }
        let n = matrix.rows;
        let scale = matrix.data.iter().map(T::magnitude).fold(0.0, f64::max);
        for i in 0..n {
            for j in i..n {
                if !T::antisymmetric_pair(&matrix[(i, j)], &matrix[(j, i)], scale) {
                    return Err(Error::Validation(format!("matrix is not antisymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(AlternatingForm { matrix })
    }

    pub fn zero(dim: usize) -> Self {
        AlternatingForm {
            matrix: Matrix::filled(dim, dim, T::zero()),
        }
    }

    /// Builds the form from its strictly upper triangle, listed row by row.
    pub fn from_upper(dim: usize, upper: &[T]) -> Result<Self> {
        if upper.len() != dim * dim.saturating_sub(1) / 2 {
            return Err(Error::Structural(format!(
                "expected {} upper-triangle entries for dimension {dim}",
                dim * dim.saturating_sub(1) / 2
            )));
        }
        let mut m = Matrix::filled(dim, dim, T::zero());
        let mut it = upper.iter();
        for i in 0..dim {
            for j in i + 1..dim {
                let v = it.next().expect("length checked");
                m[(i, j)] = v.clone();
                m[(j, i)] = v.neg();
            }
        }
        Ok(AlternatingForm { matrix: m })
    }

    /// `u ∧ w`, i.e. the matrix `u wᵀ − w uᵀ`.
    pub fn wedge(u: &[T], w: &[T]) -> Result<Self> {
        if u.len() != w.len() {
            return Err(Error::Structural("wedge of vectors of different length".into()));
        }
        let n = u.len();
        let m = Matrix::from_fn(n, n, |i, j| u[i].mul(&w[j]).add(&w[i].mul(&u[j]).neg()));
        Ok(AlternatingForm { matrix: m })
    }

    /// `e_i ∧ e_j` scaled by `value`.
    pub fn elementary(dim: usize, i: usize, j: usize, value: T) -> Self {
        let mut m = Matrix::filled(dim, dim, T::zero());
        m[(i, j)] = value.clone();
        m[(j, i)] = value.neg();
        AlternatingForm { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.matrix[(i, j)]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Structural("adding forms of different dimension".into()));
        }
        let data = self
            .matrix
            .data
            .iter()
            .zip(&other.matrix.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(AlternatingForm {
            matrix: Matrix {
                rows: self.dim(),
                cols: self.dim(),
                data,
            },
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        AlternatingForm {
            matrix: self.matrix.map(|v| v.mul(c)),
        }
    }

    /// `Σ_ν Σ_μ x_ν Q^{νμ} y_μ`.
    pub fn pair(&self, x: &[T], y: &[T]) -> T {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n, "pairing dimension mismatch");
        let mut total = T::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = T::zero();
            for j in 0..n {
                row = row.add(&self.matrix[(i, j)].mul(&y[j]));
            }
            total = total.add(&x[i].mul(&row));
        }
        total
    }
}

impl AlternatingForm<GaussianRational> {
    pub fn to_complex(&self) -> AlternatingForm<Complex64> {
        AlternatingForm {
            matrix: self.matrix.to_complex(),
        }
    }

    pub fn rank(&self) -> usize {
        exact_rank(&self.matrix)
    }
}

impl AlternatingForm<Complex64> {
    pub fn rank(&self) -> usize {
        numeric_rank(&self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::{gaussian_int, int, real};

    fn g(v: i64) -> GaussianRational {
        gaussian_int(v, 0)
    }

    #[test]
    fn ranks_of_standard_matrices() {
        let zero = Matrix::filled(3, 3, g(0));
        assert_eq!(exact_rank(&zero), 0);
        assert_eq!(numeric_rank(&zero.to_complex()), 0);
        let id = Matrix::from_fn(4, 4, |i, j| g((i == j) as i64));
        assert_eq!(exact_rank(&id), 4);
        assert_eq!(numeric_rank(&id.to_complex()), 4);
        let u = [g(1), g(2), g(0), g(-1)];
        let w = [g(0), g(1), g(3), g(5)];
        let q = AlternatingForm::wedge(&u, &w).unwrap();
        assert_eq!(q.rank(), 2);
        assert_eq!(q.to_complex().rank(), 2);
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let m = Matrix::from_rows(vec![vec![g(0), g(1)], vec![g(1), g(0)]]).unwrap();
        assert!(matches!(AlternatingForm::new(m), Err(Error::Validation(_))));
        let m = Matrix::from_rows(vec![vec![g(0), g(1)], vec![g(-1), g(0)]]).unwrap();
        assert!(AlternatingForm::new(m).is_ok());
        let c = Matrix::from_rows(vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(-1.0 + 1e-9, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert!(AlternatingForm::new(c).is_err());
    }

    #[test]
    fn det_symbolic_small_cases() {
        let a = |i| MultiPoly::var(3, i);
        let one = Matrix::from_rows(vec![vec![&a(0) + &a(2)]]).unwrap();
        assert_eq!(det_symbolic(&one).unwrap(), &a(0) + &a(2));
        let diag = Matrix::from_fn(3, 3, |i, j| if i == j { a(i) } else { MultiPoly::zero(3) });
        assert_eq!(det_symbolic(&diag).unwrap(), &(&a(0) * &a(1)) * &a(2));
        let empty: Matrix<MultiPoly> = Matrix::from_rows(vec![]).unwrap();
        assert!(det_symbolic(&empty).unwrap() == MultiPoly::one(0));
    }

    #[test]
    fn det_symbolic_rejects_nonlinear_entries() {
        let a = MultiPoly::var(1, 0);
        let m = Matrix::from_rows(vec![vec![a.pow(2)]]).unwrap();
        assert!(det_symbolic(&m).is_err());
        let m = Matrix::from_rows(vec![vec![a.clone(), a]]).unwrap();
        assert!(matches!(det_symbolic(&m), Err(Error::Structural(_))));
    }

    #[test]
    fn pairing_evaluates_bilinear_form() {
        let q = AlternatingForm::elementary(4, 0, 1, real(int(3)));
        let x = [g(1), g(0), g(0), g(0)];
        let y = [g(0), g(2), g(0), g(0)];
        assert_eq!(q.pair(&x, &y), g(6));
        assert_eq!(q.pair(&y, &x), g(-6));
    }
}
