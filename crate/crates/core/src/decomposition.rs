//! Fundamental decompositions K = K+ [+] K-, the induced oblique
//! projections, fundamental symmetries J = P+ - P-, and J-norms.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, null_space, solve, ComplexMatrix};
use crate::space::{KVector, KreinSpace, VectorClass, TOL_NEUTRAL};

/// Relative axiom/orthogonality tolerance, scaled by ||G||_F.
pub const TOL_AXIOM_REL: f64 = 1e-8;
/// Positivity threshold for restricted Gram eigenvalues.
pub const TOL_POS: f64 = 1e-10;

/// A fundamental decomposition: bases of the positive and negative
/// parts plus the induced projections. The stored bases are exactly the
/// ones the construction produced; projections are derived from them by
/// the oblique-projection formula.
#[derive(Debug, Clone)]
pub struct FundamentalDecomposition {
    space: KreinSpace,
    basis_plus: ComplexMatrix,
    basis_minus: ComplexMatrix,
    proj_plus: ComplexMatrix,
    proj_minus: ComplexMatrix,
    /// Set when the space is definite and the decomposition is trivial.
    definite_warning: bool,
}

/// Residuals of the three symmetry axioms.
#[derive(Debug, Clone, Copy)]
pub struct SymmetryResiduals {
    /// ||J^2 - I||_F
    pub involution: f64,
    /// ||G J - J^H G||_F (self-adjointness with respect to the form)
    pub self_adjoint: f64,
    /// ||J^H G J - G||_F (form isometry)
    pub isometry: f64,
}

/// A fundamental symmetry J with its cached axiom residuals.
#[derive(Debug, Clone)]
pub struct FundamentalSymmetry {
    space: KreinSpace,
    matrix: ComplexMatrix,
    residuals: SymmetryResiduals,
}

/// Report produced by [`verify_symmetry`].
#[derive(Debug, Clone, Copy)]
pub struct SymmetryReport {
    pub residuals: SymmetryResiduals,
    /// Smallest eigenvalue of the Hermitian matrix representing (x,y)_J.
    pub min_metric_eigenvalue: f64,
    pub pass: bool,
}

fn axiom_tol(space: &KreinSpace) -> f64 {
    TOL_AXIOM_REL * space.gram_frobenius()
}

/// Oblique projection onto the column span of `basis` along its
/// form-orthogonal companion: P = B (B^H G B)^{-1} B^H G.
fn oblique_projection(space: &KreinSpace, basis: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = space.dim();
    if basis.cols() == 0 {
        return Ok(ComplexMatrix::zeros(n, n));
    }
    let bh_g = basis.adjoint().mul(space.gram())?;
    let m = bh_g.mul(basis)?;
    let coeff = solve(&m, &bh_g)?;
    basis.mul(&coeff)
}

fn normalize_columns(basis: &ComplexMatrix) -> ComplexMatrix {
    let mut out = basis.clone();
    for j in 0..basis.cols() {
        let norm = basis
            .column(j)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm > 0.0 {
            for i in 0..basis.rows() {
                out.set(i, j, basis.get(i, j) / norm);
            }
        }
    }
    out
}

/// Eigenvalues of the form restricted to the column span of `basis`,
/// computed on Euclidean-normalized columns so the check is scale-free.
fn restricted_gram_eigenvalues(space: &KreinSpace, basis: &ComplexMatrix) -> Result<Vec<f64>> {
    let b = normalize_columns(basis);
    let m = b.adjoint().mul(space.gram())?.mul(&b)?;
    Ok(hermitian_eig(&m.hermitian_part())?.eigenvalues)
}

impl FundamentalDecomposition {
    fn assemble(
        space: KreinSpace,
        basis_plus: ComplexMatrix,
        basis_minus: ComplexMatrix,
        definite_warning: bool,
    ) -> Result<Self> {
        let proj_plus = if basis_plus.cols() == space.dim() {
            ComplexMatrix::identity(space.dim())
        } else {
            oblique_projection(&space, &normalize_columns(&basis_plus))?
        };
        let proj_minus = ComplexMatrix::identity(space.dim()).sub(&proj_plus)?;
        Ok(Self {
            space,
            basis_plus,
            basis_minus,
            proj_plus,
            proj_minus,
            definite_warning,
        })
    }

    pub fn space(&self) -> &KreinSpace {
        &self.space
    }

    pub fn basis_plus(&self) -> &ComplexMatrix {
        &self.basis_plus
    }

    pub fn basis_minus(&self) -> &ComplexMatrix {
        &self.basis_minus
    }

    pub fn proj_plus(&self) -> &ComplexMatrix {
        &self.proj_plus
    }

    pub fn proj_minus(&self) -> &ComplexMatrix {
        &self.proj_minus
    }

    pub fn is_definite(&self) -> bool {
        self.definite_warning
    }

    /// The fundamental symmetry J = P+ - P- = 2 P+ - I, with axiom
    /// residuals computed and checked.
    pub fn symmetry(&self) -> Result<FundamentalSymmetry> {
        let n = self.space.dim();
        let j = self
            .proj_plus
            .scale(Complex64::new(2.0, 0.0))
            .sub(&ComplexMatrix::identity(n))?;
        let report = verify_symmetry(&self.space, &j);
        let worst = report
            .residuals
            .involution
            .max(report.residuals.self_adjoint)
            .max(report.residuals.isometry);
        if !report.pass {
            return Err(Error::AxiomViolation {
                residual: if worst > axiom_tol(&self.space) {
                    worst
                } else {
                    // Residuals fine but the J-metric is not positive
                    // definite; report the offending eigenvalue.
                    report.min_metric_eigenvalue
                },
            });
        }
        Ok(FundamentalSymmetry {
            space: self.space.clone(),
            matrix: j,
            residuals: report.residuals,
        })
    }
}

impl FundamentalSymmetry {
    /// Wraps an externally supplied matrix after checking the axioms.
    pub fn from_matrix(space: &KreinSpace, j: ComplexMatrix) -> Result<Self> {
        let report = verify_symmetry(space, &j);
        if !report.pass {
            let worst = report
                .residuals
                .involution
                .max(report.residuals.self_adjoint)
                .max(report.residuals.isometry)
                .max(-report.min_metric_eigenvalue);
            return Err(Error::AxiomViolation { residual: worst });
        }
        Ok(Self {
            space: space.clone(),
            matrix: j,
            residuals: report.residuals,
        })
    }

    pub fn space(&self) -> &KreinSpace {
        &self.space
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn residuals(&self) -> SymmetryResiduals {
        self.residuals
    }

    pub fn apply(&self, x: &KVector) -> Result<KVector> {
        Ok(KVector::new(self.matrix.matvec(x.coords())?))
    }

    /// The positive definite J-inner product (x, y)_J = [Jx, y].
    pub fn j_inner(&self, x: &KVector, y: &KVector) -> Result<Complex64> {
        self.space.inner(&self.apply(x)?, y)
    }
}

/// The canonical decomposition from the Gram eigenbasis: positive
/// eigenvectors span K+, negative span K-.
///
/// A definite space yields the trivial decomposition with a warning
/// flag rather than an error.
pub fn canonical_decomposition(space: &KreinSpace) -> Result<FundamentalDecomposition> {
    let eig = space.gram_eig();
    let n = space.dim();
    let mut plus_cols = Vec::new();
    let mut minus_cols = Vec::new();
    for j in 0..n {
        if eig.eigenvalues[j] > 0.0 {
            plus_cols.push(eig.eigenvectors.column(j));
        } else {
            minus_cols.push(eig.eigenvectors.column(j));
        }
    }
    let definite = plus_cols.is_empty() || minus_cols.is_empty();
    // Empty parts keep the ambient row count.
    let to_matrix = |cols: &[Vec<Complex64>]| {
        if cols.is_empty() {
            Ok(ComplexMatrix::zeros(n, 0))
        } else {
            ComplexMatrix::from_columns(cols)
        }
    };
    FundamentalDecomposition::assemble(
        space.clone(),
        to_matrix(&plus_cols)?,
        to_matrix(&minus_cols)?,
        definite,
    )
}

/// Builds the fundamental decomposition whose positive part is the span
/// of the given columns. The negative part is the form-orthogonal
/// companion, computed as the kernel of B^H G.
pub fn decomposition_from_positive_subspace(
    space: &KreinSpace,
    basis_plus: &ComplexMatrix,
) -> Result<FundamentalDecomposition> {
    let (p, q) = space.signature();
    let n = space.dim();
    if basis_plus.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: basis_plus.rows(),
        });
    }
    if basis_plus.cols() != p {
        return Err(Error::WrongRank {
            expected: p,
            got: basis_plus.cols(),
        });
    }
    let plus_eigs = restricted_gram_eigenvalues(space, basis_plus)?;
    let min_plus = plus_eigs.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_plus <= TOL_POS {
        return Err(Error::NotUniformlyPositive {
            min_eigenvalue: min_plus,
        });
    }

    let bh_g = normalize_columns(basis_plus).adjoint().mul(space.gram())?;
    let companion = null_space(&bh_g);
    if companion.cols() != q {
        return Err(Error::CompanionNotNegative {
            max_eigenvalue: f64::NAN,
        });
    }
    if q > 0 {
        let minus_eigs = restricted_gram_eigenvalues(space, &companion)?;
        let max_minus = minus_eigs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if max_minus >= -TOL_POS {
            return Err(Error::CompanionNotNegative {
                max_eigenvalue: max_minus,
            });
        }
    }
    FundamentalDecomposition::assemble(
        space.clone(),
        basis_plus.clone(),
        companion,
        q == 0 || p == 0,
    )
}

/// Projection of `u` onto the line spanned by the non-neutral `v`:
/// ([u, v] / [v, v]) v.
pub fn projection_onto_line(space: &KreinSpace, v: &KVector, u: &KVector) -> Result<KVector> {
    let vv = space.inner(v, v)?;
    let band = TOL_NEUTRAL * v.euclidean_norm().powi(2) * space.gram_frobenius();
    if vv.norm() <= band {
        return Err(Error::NeutralAxis);
    }
    let uv = space.inner(u, v)?;
    Ok(v.scale(uv / vv))
}

/// The J-norm ||x||_J = [Jx, x]^{1/2}. The radicand is real and
/// nonnegative for a valid symmetry; values inside the rounding band
/// are clamped to zero.
pub fn j_norm(sym: &FundamentalSymmetry, x: &KVector) -> Result<f64> {
    let radicand = sym.space.inner(&sym.apply(x)?, x)?.re;
    let tol = axiom_tol(&sym.space)
        * sym.matrix.frobenius_norm().max(1.0)
        * x.euclidean_norm().powi(2).max(1.0);
    if radicand < -tol {
        return Err(Error::NegativeRadicand { radicand });
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Checks the three symmetry axioms and positive definiteness of the
/// induced J-metric, reporting residuals. Never errors.
///
/// Reported residuals are plain Frobenius norms; the verdict compares
/// each against the tolerance times its natural magnitude scale
/// (powers of ||J||_F), since the rounding floor of a stored symmetry
/// grows with its entries.
pub fn verify_symmetry(space: &KreinSpace, j: &ComplexMatrix) -> SymmetryReport {
    let n = space.dim();
    let nan_report = |residuals: SymmetryResiduals| SymmetryReport {
        residuals,
        min_metric_eigenvalue: f64::NAN,
        pass: false,
    };
    if !j.is_square() || j.rows() != n {
        return nan_report(SymmetryResiduals {
            involution: f64::NAN,
            self_adjoint: f64::NAN,
            isometry: f64::NAN,
        });
    }
    let g = space.gram();
    let ident = ComplexMatrix::identity(n);
    let involution = j
        .mul(j)
        .and_then(|jj| jj.sub(&ident))
        .map(|d| d.frobenius_norm())
        .unwrap_or(f64::NAN);
    let gj = g.mul(j).expect("dimensions agree");
    let jh_g = j.adjoint().mul(g).expect("dimensions agree");
    let self_adjoint = gj
        .sub(&jh_g)
        .map(|d| d.frobenius_norm())
        .unwrap_or(f64::NAN);
    let isometry = j
        .adjoint()
        .mul(g)
        .and_then(|m| m.mul(j))
        .and_then(|m| m.sub(g))
        .map(|d| d.frobenius_norm())
        .unwrap_or(f64::NAN);
    let residuals = SymmetryResiduals {
        involution,
        self_adjoint,
        isometry,
    };
    // (x, y)_J = [Jx, y] is represented by the Hermitian part of G J.
    let metric = gj.hermitian_part();
    let min_metric_eigenvalue = match hermitian_eig(&metric) {
        Ok(eig) => eig
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min),
        Err(_) => f64::NAN,
    };
    let jfro = j.frobenius_norm().max(1.0);
    let gfro = space.gram_frobenius();
    let pass = involution <= TOL_AXIOM_REL * jfro * jfro
        && self_adjoint <= TOL_AXIOM_REL * gfro * jfro
        && isometry <= TOL_AXIOM_REL * gfro * jfro * jfro
        && min_metric_eigenvalue > 0.0;
    SymmetryReport {
        residuals,
        min_metric_eigenvalue,
        pass,
    }
}

/// Extends the form-orthogonal complement of `seeds` to a basis that is
/// form-orthonormal ([b, b] = +1 or -1, mutually orthogonal), returned
/// split into positive and negative parts.
///
/// Seeds must be pairwise orthogonal and non-neutral. The canonical
/// eigenbasis is projected away from the seeds and re-orthogonalized by
/// indefinite Gram-Schmidt with greedy pivoting on |[c, c]| / ||c||^2.
pub(crate) fn complete_orthogonal(
    space: &KreinSpace,
    seeds: &[KVector],
) -> Result<(Vec<KVector>, Vec<KVector>)> {
    let n = space.dim();
    let wanted = n - seeds.len();
    let eig = space.gram_eig();

    let mut candidates: Vec<KVector> = Vec::with_capacity(n);
    for j in 0..n {
        let mut c = KVector::new(eig.eigenvectors.column(j));
        for s in seeds {
            let proj = projection_onto_line(space, s, &c)?;
            c = c.sub(&proj);
        }
        candidates.push(c);
    }

    let drop_tol = 1e-12;
    let pivot_tol = TOL_POS * space.gram_frobenius().max(1.0);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    while plus.len() + minus.len() < wanted {
        let mut best: Option<(usize, f64, f64)> = None;
        for (i, c) in candidates.iter().enumerate() {
            let norm_sq = c.euclidean_norm().powi(2);
            if norm_sq <= drop_tol * drop_tol {
                continue;
            }
            let q = space.quad_form(c)?;
            let ratio = q.abs() / norm_sq;
            if best.is_none_or(|(_, r, _)| ratio > r) {
                best = Some((i, ratio, q));
            }
        }
        let (idx, ratio, q) = best.ok_or(Error::DegeneratePairing)?;
        if ratio <= pivot_tol {
            return Err(Error::DegeneratePairing);
        }
        let pivot = candidates.swap_remove(idx);
        let sign = q.signum();
        let b = pivot.scale(Complex64::new(1.0 / q.abs().sqrt(), 0.0));
        for c in candidates.iter_mut() {
            let cb = space.inner(c, &b)?;
            *c = c.sub(&b.scale(cb * sign));
        }
        if sign > 0.0 {
            plus.push(b);
        } else {
            minus.push(b);
        }
    }
    Ok((plus, minus))
}

/// Completes a fundamental decomposition around the given orthogonal,
/// form-normalized seeds, returning the parts of the complement.
/// Convenience wrapper that also sanity-checks the signature count.
pub(crate) fn complement_parts(
    space: &KreinSpace,
    seeds: &[KVector],
) -> Result<(Vec<KVector>, Vec<KVector>)> {
    let (p, q) = space.signature();
    let pos_seeds = seeds
        .iter()
        .filter(|s| space.classify(s).map(|c| c == VectorClass::Positive) == Ok(true))
        .count();
    let neg_seeds = seeds.len() - pos_seeds;
    let (plus, minus) = complete_orthogonal(space, seeds)?;
    if plus.len() + pos_seeds != p || minus.len() + neg_seeds != q {
        return Err(Error::DegeneratePairing);
    }
    Ok((plus, minus))
}
