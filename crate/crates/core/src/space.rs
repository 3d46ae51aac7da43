//! Finite-dimensional spaces carrying a nondegenerate indefinite
//! Hermitian form.
//!
//! Convention: the form `[x, y]` is linear in the first argument and
//! conjugate-linear in the second, i.e. `[x, y] = y^H G x` for the Gram
//! matrix `G`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, ComplexMatrix, EigenResult, TOL_HERM_REL};

/// Nondegeneracy threshold: min |eigenvalue| relative to max |eigenvalue|.
pub const TOL_DEGEN: f64 = 1e-10;
/// Neutrality threshold for vector classification (relative).
pub const TOL_NEUTRAL: f64 = 1e-9;

/// Sign class of a vector under the indefinite form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorClass {
    Positive,
    Negative,
    Neutral,
}

/// A coordinate vector in some space of matching dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct KVector(Vec<Complex64>);

impl KVector {
    pub fn new(coords: Vec<Complex64>) -> Self {
        Self(coords)
    }

    pub fn from_reals(coords: &[f64]) -> Self {
        Self(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.norm_sqr() == 0.0)
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(self.0.iter().map(|&z| z * factor).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect())
    }

    /// alpha * x + beta * y.
    pub fn combine(alpha: Complex64, x: &Self, beta: Complex64, y: &Self) -> Self {
        Self(
            x.0.iter()
                .zip(&y.0)
                .map(|(&a, &b)| alpha * a + beta * b)
                .collect(),
        )
    }

    pub fn basis_vector(dim: usize, index: usize) -> Self {
        let mut coords = vec![Complex64::new(0.0, 0.0); dim];
        coords[index] = Complex64::new(1.0, 0.0);
        Self(coords)
    }
}

impl From<Vec<Complex64>> for KVector {
    fn from(coords: Vec<Complex64>) -> Self {
        Self(coords)
    }
}

/// A complex coordinate space with a validated, nondegenerate Hermitian
/// Gram matrix. Immutable after construction.
#[derive(Debug, Clone)]
pub struct KreinSpace {
    gram: ComplexMatrix,
    signature: (usize, usize),
    gram_eig: EigenResult,
    gram_fro: f64,
}

impl KreinSpace {
    /// Validates the Gram matrix and caches its eigendecomposition and
    /// signature.
    pub fn new(gram: ComplexMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                got: gram.cols(),
            });
        }
        if gram.rows() < 2 {
            return Err(Error::InsufficientDimension);
        }
        let gram_fro = gram.frobenius_norm();
        let res = gram.hermitian_residual();
        let tol = TOL_HERM_REL * gram_fro;
        if res > tol {
            return Err(Error::NotHermitian { residual: res, tol });
        }
        let gram_eig = hermitian_eig(&gram)?;
        let max_abs = gram_eig
            .eigenvalues
            .iter()
            .map(|l| l.abs())
            .fold(0.0, f64::max);
        let min_abs = gram_eig
            .eigenvalues
            .iter()
            .map(|l| l.abs())
            .fold(f64::INFINITY, f64::min);
        if max_abs == 0.0 || min_abs < TOL_DEGEN * max_abs {
            return Err(Error::Degenerate {
                ratio: if max_abs == 0.0 {
                    0.0
                } else {
                    min_abs / max_abs
                },
            });
        }
        let signature = gram_eig.sign_counts();
        Ok(Self {
            gram,
            signature,
            gram_eig,
            gram_fro,
        })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &ComplexMatrix {
        &self.gram
    }

    pub fn gram_frobenius(&self) -> f64 {
        self.gram_fro
    }

    pub fn gram_eig(&self) -> &EigenResult {
        &self.gram_eig
    }

    /// (p, q): counts of positive and negative Gram eigenvalues.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn is_indefinite(&self) -> bool {
        self.signature.0 >= 1 && self.signature.1 >= 1
    }

    /// The same coordinate space under the negated form.
    pub fn anti_space(&self) -> Self {
        Self::new(self.gram.scale(Complex64::new(-1.0, 0.0)))
            .expect("negating a valid Gram matrix keeps it valid")
    }

    fn check_dim(&self, x: &KVector) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// The indefinite form [x, y] = y^H G x.
    pub fn inner(&self, x: &KVector, y: &KVector) -> Result<Complex64> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let gx = self.gram.matvec(x.coords())?;
        Ok(y.coords()
            .iter()
            .zip(&gx)
            .map(|(&yi, &gxi)| yi.conj() * gxi)
            .sum())
    }

    /// [x, x], which is real for a Hermitian form; the rounding-level
    /// imaginary part is discarded.
    pub fn quad_form(&self, x: &KVector) -> Result<f64> {
        Ok(self.inner(x, x)?.re)
    }

    /// Classifies a nonzero vector by the sign of [x, x], with a
    /// neutrality band scaled to the vector and the Gram matrix.
    pub fn classify(&self, x: &KVector) -> Result<VectorClass> {
        self.check_dim(x)?;
        if x.is_zero() {
            return Err(Error::ZeroVector);
        }
        let q = self.quad_form(x)?;
        let band = TOL_NEUTRAL * x.euclidean_norm().powi(2) * self.gram_fro;
        if q.abs() <= band {
            Ok(VectorClass::Neutral)
        } else if q > 0.0 {
            Ok(VectorClass::Positive)
        } else {
            Ok(VectorClass::Negative)
        }
    }
}
