//! Dense complex linear algebra at desk-scale dimensions.
//!
//! Everything here is deterministic: no randomized pivoting, no
//! parallel reductions, identical inputs give identical bits out.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative Hermitian-symmetry tolerance, scaled by the Frobenius norm.
pub const TOL_HERM_REL: f64 = 1e-10;
/// Eigenpair residual tolerance (relative).
pub const TOL_EIG: f64 = 1e-9;
/// Singular values below `TOL_RANK * sigma_max` count as zero.
pub const TOL_RANK: f64 = 1e-10;

/// Sweep budget for the cyclic Jacobi eigensolver.
const MAX_SWEEPS: usize = 100;

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, Complex64::new(v, 0.0));
        }
        m
    }

    pub fn from_columns(cols: &[Vec<Complex64>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    got: col.len(),
                });
            }
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_slice(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).conj());
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != x.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row_slice(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a *= factor;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max |M\[i\]\[j\] - conj(M\[j\]\[i\])| over the square part.
    pub fn hermitian_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols.min(self.rows) {
                r = r.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        r
    }

    pub fn is_hermitian_within(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_residual() <= tol
    }

    /// (M + M^H)/2, forcing exact Hermitian symmetry.
    pub fn hermitian_part(&self) -> Self {
        let n = self.rows.min(self.cols);
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                out.set(i, j, v);
            }
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues sorted
/// descending, unitary eigenvector matrix (columns).
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenResult {
    /// Counts of (positive, negative) eigenvalues.
    pub fn sign_counts(&self) -> (usize, usize) {
        let p = self.eigenvalues.iter().filter(|&&l| l > 0.0).count();
        let q = self.eigenvalues.iter().filter(|&&l| l < 0.0).count();
        (p, q)
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Accurate and deterministic at the dimensions this crate
/// targets (a few hundred at most).
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenResult> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    let tol_herm = TOL_HERM_REL * m.frobenius_norm();
    let res = m.hermitian_residual();
    if res > tol_herm {
        return Err(Error::NotHermitian {
            residual: res,
            tol: tol_herm,
        });
    }

    let n = m.rows();
    if n == 0 {
        return Ok(EigenResult {
            eigenvalues: vec![],
            eigenvectors: ComplexMatrix::zeros(0, 0),
        });
    }

    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(1e-300);
    let stop = 1e-15 * scale;

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= stop {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq.norm() <= stop / (n as f64) {
                    continue;
                }
                let (c, s, phase) = jacobi_rotation(a.get(p, p).re, a.get(q, q).re, apq);
                apply_rotation(&mut a, &mut v, p, q, c, s, phase);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > stop {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors.set(i, new_j, v.get(i, old_j));
        }
    }
    Ok(EigenResult {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Rotation parameters (c, s, e^{i phi}) annihilating the (p,q) entry of
/// the Hermitian 2x2 block [[app, b],[conj(b), aqq]] with b = |b| e^{i phi}.
fn jacobi_rotation(app: f64, aqq: f64, b: Complex64) -> (f64, f64, Complex64) {
    let beta = b.norm();
    let phase = b / beta;
    let zeta = (app - aqq) / (2.0 * beta);
    // Smaller-magnitude root of t^2 - 2 zeta t - 1 = 0.
    let t = if zeta >= 0.0 {
        -1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    (c, s, phase)
}

/// A <- U^H A U and V <- V U for the unitary U supported on rows/cols p, q:
/// U = [[c, s e^{i phi}], [-s e^{-i phi}, c]].
fn apply_rotation(
    a: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
    c: f64,
    s: f64,
    phase: Complex64,
) {
    let n = a.rows();
    // Columns (right multiplication by U).
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * c - akq * s * phase.conj());
        a.set(k, q, akp * s * phase + akq * c);
    }
    // Rows (left multiplication by U^H).
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, apk * c - aqk * s * phase);
        a.set(q, k, apk * s * phase.conj() + aqk * c);
    }
    // Eigenvector accumulation.
    for k in 0..v.rows() {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * c - vkq * s * phase.conj());
        v.set(k, q, vkp * s * phase + vkq * c);
    }
    // The rotation zeroes (p,q) exactly in exact arithmetic; force it so
    // the off-diagonal norm decreases monotonically.
    let zero = Complex64::new(0.0, 0.0);
    a.set(p, q, zero);
    a.set(q, p, zero);
    let dp = a.get(p, p);
    let dq = a.get(q, q);
    a.set(p, p, Complex64::new(dp.re, 0.0));
    a.set(q, q, Complex64::new(dq.re, 0.0));
}

/// Singular values (descending) and right singular vectors of `m`,
/// by one-sided Jacobi: columns are orthogonalized in place while the
/// rotations accumulate into V. Keeps full accuracy in the small
/// singular values, which the rank cut below depends on.
fn right_singular_vectors(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let cols = m.cols();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(cols);
    let col_dot = |a: &ComplexMatrix, i: usize, j: usize| -> Complex64 {
        (0..a.rows())
            .map(|r| a.get(r, i).conj() * a.get(r, j))
            .sum()
    };
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols.saturating_sub(1) {
            for q in p + 1..cols {
                let app = col_dot(&a, p, p).re;
                let aqq = col_dot(&a, q, q).re;
                let apq = col_dot(&a, p, q);
                if apq.norm() <= 1e-15 * (app * aqq).sqrt() || apq.norm() == 0.0 {
                    continue;
                }
                rotated = true;
                let (c, s, phase) = jacobi_rotation(app, aqq, apq);
                for k in 0..a.rows() {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp * c - akq * s * phase.conj());
                    a.set(k, q, akp * s * phase + akq * c);
                }
                for k in 0..cols {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * c - vkq * s * phase.conj());
                    v.set(k, q, vkp * s * phase + vkq * c);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<usize> = (0..cols).collect();
    let sigmas: Vec<f64> = (0..cols)
        .map(|j| col_dot(&a, j, j).re.max(0.0).sqrt())
        .collect();
    order.sort_by(|&i, &j| sigmas[j].partial_cmp(&sigmas[i]).unwrap());
    let sorted_sigmas: Vec<f64> = order.iter().map(|&j| sigmas[j]).collect();
    let mut sorted_v = ComplexMatrix::zeros(cols, cols);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..cols {
            sorted_v.set(i, new_j, v.get(i, old_j));
        }
    }
    (sorted_sigmas, sorted_v)
}

/// Orthonormal basis of the kernel of `m`, as matrix columns. Full-rank
/// input yields a matrix with zero columns. Singular values below
/// `TOL_RANK * sigma_max` are treated as zero.
pub fn null_space(m: &ComplexMatrix) -> ComplexMatrix {
    let (sigmas, v) = right_singular_vectors(m);
    let sigma_max = sigmas.first().copied().unwrap_or(0.0);
    let cut = TOL_RANK * sigma_max;
    let mut kernel: Vec<Vec<Complex64>> = Vec::new();
    // Most-null columns first.
    for j in (0..m.cols()).rev() {
        if sigmas[j] <= cut {
            kernel.push(v.column(j));
        } else {
            break;
        }
    }
    ComplexMatrix::from_columns(&kernel).expect("columns share the ambient dimension")
}

/// Solve A X = B by LU with partial pivoting.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            got: a.cols(),
        });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            got: b.rows(),
        });
    }
    let n = a.rows();
    let mut lu = a.clone();
    let mut rhs = b.clone();
    let scale = a.max_abs().max(1e-300);

    for k in 0..n {
        let (mut pivot_row, mut pivot_mag) = (k, lu.get(k, k).norm());
        for i in k + 1..n {
            let mag = lu.get(i, k).norm();
            if mag > pivot_mag {
                pivot_row = i;
                pivot_mag = mag;
            }
        }
        if pivot_mag <= 1e-14 * scale {
            return Err(Error::SingularMatrix);
        }
        if pivot_row != k {
            for j in 0..n {
                let t = lu.get(k, j);
                lu.set(k, j, lu.get(pivot_row, j));
                lu.set(pivot_row, j, t);
            }
            for j in 0..rhs.cols() {
                let t = rhs.get(k, j);
                rhs.set(k, j, rhs.get(pivot_row, j));
                rhs.set(pivot_row, j, t);
            }
        }
        let pivot = lu.get(k, k);
        for i in k + 1..n {
            let factor = lu.get(i, k) / pivot;
            lu.set(i, k, factor);
            for j in k + 1..n {
                let v = lu.get(i, j) - factor * lu.get(k, j);
                lu.set(i, j, v);
            }
            for j in 0..rhs.cols() {
                let v = rhs.get(i, j) - factor * rhs.get(k, j);
                rhs.set(i, j, v);
            }
        }
    }
    // Back substitution.
    let mut x = ComplexMatrix::zeros(n, rhs.cols());
    for j in 0..rhs.cols() {
        for i in (0..n).rev() {
            let mut acc = rhs.get(i, j);
            for k in i + 1..n {
                acc -= lu.get(i, k) * x.get(k, j);
            }
            x.set(i, j, acc / lu.get(i, i));
        }
    }
    Ok(x)
}

/// Real roots of a2 t^2 + a1 t + a0 = 0, ascending. The quadratic case
/// avoids cancellation between -a1 and the discriminant root; a negative
/// discriminant yields an empty list.
pub fn quadratic_real_roots(a2: f64, a1: f64, a0: f64) -> Result<Vec<f64>> {
    if a2 == 0.0 {
        if a1 == 0.0 {
            return Err(Error::DegenerateEquation);
        }
        return Ok(vec![-a0 / a1]);
    }
    let disc = a1 * a1 - 4.0 * a2 * a0;
    if disc < 0.0 {
        return Ok(vec![]);
    }
    let sq = disc.sqrt();
    let q = if a1 >= 0.0 {
        -(a1 + sq) / 2.0
    } else {
        -(a1 - sq) / 2.0
    };
    let mut roots = if q == 0.0 {
        // a1 = 0 and disc = 0, so a0 = 0: double root at the origin.
        vec![0.0, 0.0]
    } else {
        vec![q / a2, a0 / q]
    };
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(roots)
}
