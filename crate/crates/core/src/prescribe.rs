//! Constructing a fundamental symmetry that gives a chosen vector any
//! admissible J-norm, plus the derived constructions: strictly larger
//! norms, sandwiched norms, and near-scale-invariant norms.

use num_complex::Complex64;
use serde::Serialize;

use crate::decomposition::{
    canonical_decomposition, complement_parts, decomposition_from_positive_subspace, j_norm,
    FundamentalSymmetry,
};
use crate::error::{Error, Result};
use crate::numerics::{quadratic_real_roots, solve, ComplexMatrix};
use crate::space::{KVector, KreinSpace, VectorClass};

/// Tolerance on the achieved norm, relative to 1 + target.
pub const TOL_TARGET: f64 = 1e-8;

/// The attainable set of J-norms for a fixed vector: [lower, inf) when
/// the lower bound is attained, (lower, inf) otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormRange {
    pub lower: f64,
    pub lower_attained: bool,
}

/// Which construction route produced a [`TargetTrace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TargetBranch {
    NonNeutralNeg,
    NonNeutralPos,
    Neutral,
}

/// Full intermediate record of the prescribed-norm construction.
///
/// For the `NonNeutralPos` branch the construction runs on the negated
/// form, where the vector is negative; the recorded intermediates refer
/// to that run (in particular `D` is the negated square).
#[derive(Debug, Clone, Serialize)]
pub struct TargetTrace {
    pub branch: TargetBranch,
    /// Auxiliary partner: opposite-sign unit vector on the non-neutral
    /// branches, neutral partner with [x, y] = 1 on the neutral branch.
    pub y: KVector,
    /// Neutral point on the segment from x to y (non-neutral branches).
    pub z: Option<KVector>,
    pub s0: Option<f64>,
    /// A = |[x, z]|^2
    #[serde(rename = "A")]
    pub coeff_a: Option<f64>,
    /// C = [y, z]
    #[serde(rename = "C")]
    pub coeff_c: Option<f64>,
    /// D = [x, x]
    #[serde(rename = "D")]
    pub coeff_d: Option<f64>,
    /// b = a^2, the squared norm target.
    pub b: f64,
    /// (a2, a1, a0) of the quadratic in t (non-neutral branches).
    pub quadratic_coeffs: Option<[f64; 3]>,
    pub roots: Vec<f64>,
    pub t_b: f64,
    /// The new positive axis: v(t_b), or w(t_b) on the neutral branch.
    pub v: KVector,
    /// (u, v) of the neutral branch.
    pub u_pm: Option<(KVector, KVector)>,
}

impl TargetTrace {
    /// The achieved norm evaluated from the construction parameters:
    /// sqrt(2 (1-t)^2 A / (t^2 + 2 t (1-t) C) - D) on the non-neutral
    /// branches, sqrt(b) on the neutral branch. This route carries no
    /// rounding from the assembled symmetry matrix, whose entries grow
    /// like the inverse of the achieved norm squared.
    pub fn achieved_norm(&self) -> f64 {
        match self.branch {
            TargetBranch::Neutral => self.b.sqrt(),
            _ => {
                let t = self.t_b;
                let a = self.coeff_a.expect("non-neutral trace");
                let c = self.coeff_c.expect("non-neutral trace");
                let d = self.coeff_d.expect("non-neutral trace");
                let projected = if t >= 1.0 {
                    0.0
                } else {
                    2.0 * (1.0 - t) * (1.0 - t) * a / (t * t + 2.0 * t * (1.0 - t) * c)
                };
                (projected - d).max(0.0).sqrt()
            }
        }
    }
}

/// The range of J-norms a nonzero vector can attain over all
/// fundamental symmetries of an indefinite space.
pub fn norm_range(space: &KreinSpace, x: &KVector) -> Result<NormRange> {
    if !space.is_indefinite() {
        return Err(Error::NotIndefinite);
    }
    match space.classify(x)? {
        VectorClass::Neutral => Ok(NormRange {
            lower: 0.0,
            lower_attained: false,
        }),
        _ => Ok(NormRange {
            lower: space.quad_form(x)?.abs().sqrt(),
            lower_attained: true,
        }),
    }
}

/// A second neutral vector pairing to [x, y] = 1 with the given neutral
/// x. Built from any w with [x, w] != 0 (the standard basis always
/// contains one for a nondegenerate form, with a G^{-1} x fallback),
/// rescaled to [x, w] = 1, then y = w - ([w, w] / 2) x.
pub fn find_neutral_partner(space: &KreinSpace, x: &KVector) -> Result<KVector> {
    if space.classify(x)? != VectorClass::Neutral {
        return Err(Error::NotNeutral);
    }
    let gx = space.gram().matvec(x.coords())?;
    let (best_i, best_mag) = gx
        .iter()
        .enumerate()
        .map(|(i, z)| (i, z.norm()))
        .fold((0, 0.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
    let scale = x.euclidean_norm() * space.gram_frobenius();
    let w = if best_mag > 1e-14 * scale {
        KVector::basis_vector(space.dim(), best_i)
    } else {
        // [x, G^{-1} x] = ||x||^2 > 0.
        let rhs = ComplexMatrix::from_columns(&[x.coords().to_vec()])?;
        KVector::new(solve(space.gram(), &rhs)?.column(0))
    };
    let pairing = space.inner(x, &w)?;
    if pairing.norm() <= 1e-14 * scale {
        return Err(Error::DegeneratePairing);
    }
    let w = w.scale(Complex64::new(1.0, 0.0) / pairing.conj());
    let half_ww = space.quad_form(&w)? / 2.0;
    Ok(w.sub(&x.scale(Complex64::new(half_ww, 0.0))))
}

/// The neutral point on the segment s -> s*ypos + (1-s)*xneg between a
/// negative and a positive vector, returned as (s0, z) with s0 in (0,1).
pub fn neutral_on_segment(
    space: &KreinSpace,
    xneg: &KVector,
    ypos: &KVector,
) -> Result<(f64, KVector)> {
    let qx = space.quad_form(xneg)?;
    let qy = space.quad_form(ypos)?;
    let r = space.inner(ypos, xneg)?.re;
    // [u(s), u(s)] = s^2 qy + 2 s (1-s) r + (1-s)^2 qx as a quadratic in s.
    let a2 = qy + qx - 2.0 * r;
    let a1 = 2.0 * (r - qx);
    let a0 = qx;
    let roots = match quadratic_real_roots(a2, a1, a0) {
        Ok(roots) => roots,
        Err(Error::DegenerateEquation) => return Err(Error::NoRootInUnitInterval),
        Err(e) => return Err(e),
    };
    let s0 = roots
        .into_iter()
        .find(|&s| s > 0.0 && s < 1.0)
        .ok_or(Error::NoRootInUnitInterval)?;
    let z = KVector::combine(
        Complex64::new(s0, 0.0),
        ypos,
        Complex64::new(1.0 - s0, 0.0),
        xneg,
    );
    Ok((s0, z))
}

/// A fundamental symmetry J with ||x||_J = a, together with the full
/// construction trace.
///
/// For non-neutral x the target must satisfy a >= |[x
/// ,x]|^{1/2} (the boundary is attained); for neutral x any a > 0 works.
pub fn target_norm(
    space: &KreinSpace,
    x: &KVector,
    a: f64,
) -> Result<(FundamentalSymmetry, TargetTrace)> {
    match space.classify(x)? {
        VectorClass::Neutral => target_norm_neutral(space, x, a),
        VectorClass::Negative => target_norm_negative(space, x, a, TargetBranch::NonNeutralNeg),
        VectorClass::Positive => {
            // Reduce to the negative case on the negated form; the norms
            // agree because [Jx, x] is invariant under negating both.
            let anti = space.anti_space();
            let (anti_sym, trace) = target_norm_negative(&anti, x, a, TargetBranch::NonNeutralPos)?;
            let j = anti_sym.matrix().scale(Complex64::new(-1.0, 0.0));
            let sym = FundamentalSymmetry::from_matrix(space, j)?;
            Ok((sym, trace))
        }
    }
}

fn target_norm_negative(
    space: &KreinSpace,
    x: &KVector,
    a: f64,
    branch: TargetBranch,
) -> Result<(FundamentalSymmetry, TargetTrace)> {
    let d = space.quad_form(x)?;
    let lower = d.abs().sqrt();
    if a < lower - TOL_TARGET * (1.0 + lower) {
        return Err(Error::TargetBelowRange { target: a, lower });
    }
    if !space.is_indefinite() {
        return Err(Error::NeedsBothSigns);
    }

    // Complete a decomposition around x: x sits in the negative part.
    // The negative complement is implicit; the final decomposition
    // recomputes it as the orthogonal companion of the new K+.
    let x_unit = x.scale(Complex64::new(1.0 / lower, 0.0));
    let (m_plus, _) = complement_parts(space, &[x_unit])?;
    let Some((y, l_plus)) = m_plus.split_first() else {
        return Err(Error::InsufficientDimension);
    };

    let b = a * a;
    let bd = b + d;
    let (s0, z) = neutral_on_segment(space, x, y)?;
    let coeff_a = space.inner(x, &z)?.norm_sqr();
    let coeff_c = space.inner(y, &z)?.re;
    let a2 = bd * (1.0 - 2.0 * coeff_c) - 2.0 * coeff_a;
    let a1 = bd * 2.0 * coeff_c + 4.0 * coeff_a;
    let a0 = -2.0 * coeff_a;

    // At b + D <= 0 the target sits at (or within tolerance below) the
    // bottom of the range: the quadratic degenerates to -2A (t - 1)^2
    // and the completed decomposition itself is the answer.
    let boundary = bd <= 0.0;
    let (roots, t_b) = if boundary {
        (vec![1.0, 1.0], 1.0)
    } else {
        let roots = quadratic_real_roots(a2, a1, a0)?;
        let t_b = roots
            .iter()
            .cloned()
            .filter(|&t| t > 0.0 && t <= 1.0 + 1e-12)
            .fold(f64::NAN, f64::max);
        if t_b.is_nan() {
            return Err(Error::NoRootInUnitInterval);
        }
        (roots, t_b.min(1.0))
    };

    let v = KVector::combine(
        Complex64::new(t_b, 0.0),
        y,
        Complex64::new(1.0 - t_b, 0.0),
        &z,
    );
    let mut plus_cols: Vec<Vec<Complex64>> = l_plus.iter().map(|k| k.coords().to_vec()).collect();
    plus_cols.push(v.coords().to_vec());
    let basis_plus = ComplexMatrix::from_columns(&plus_cols)?;
    let sym = decomposition_from_positive_subspace(space, &basis_plus)?.symmetry()?;

    let trace = TargetTrace {
        branch,
        y: y.clone(),
        z: Some(z),
        s0: Some(s0),
        coeff_a: Some(coeff_a),
        coeff_c: Some(coeff_c),
        coeff_d: Some(d),
        b,
        quadratic_coeffs: Some([a2, a1, a0]),
        roots,
        t_b,
        v,
        u_pm: None,
    };
    Ok((sym, trace))
}

fn target_norm_neutral(
    space: &KreinSpace,
    x: &KVector,
    a: f64,
) -> Result<(FundamentalSymmetry, TargetTrace)> {
    if a <= 0.0 {
        return Err(Error::TargetBelowRange {
            target: a,
            lower: 0.0,
        });
    }
    if !space.is_indefinite() {
        return Err(Error::NeedsBothSigns);
    }
    let y = find_neutral_partner(space, x)?;
    let inv_sqrt2 = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
    let u = x.add(&y).scale(inv_sqrt2);
    let v = x.sub(&y).scale(inv_sqrt2);

    let b = a * a;
    let t_b = (1.0 - b) / (1.0 + b);
    let w = u.add(&v.scale(Complex64::new(t_b, 0.0)));

    let (l_plus, _l_minus) = complement_parts(space, &[u.clone(), v.clone()])?;
    let mut plus_cols: Vec<Vec<Complex64>> = l_plus.iter().map(|k| k.coords().to_vec()).collect();
    plus_cols.push(w.coords().to_vec());
    let basis_plus = ComplexMatrix::from_columns(&plus_cols)?;
    let sym = decomposition_from_positive_subspace(space, &basis_plus)?.symmetry()?;

    let trace = TargetTrace {
        branch: TargetBranch::Neutral,
        y,
        z: None,
        s0: None,
        coeff_a: None,
        coeff_c: None,
        coeff_d: None,
        b,
        quadratic_coeffs: None,
        roots: vec![],
        t_b,
        v: w,
        u_pm: Some((u, v)),
    };
    Ok((sym, trace))
}

/// A symmetry K with ||x||_K strictly above ||x||_J, at target
/// 2 max(||x||_J, lower) + 1.
pub fn strictly_larger(
    space: &KreinSpace,
    x: &KVector,
    j: &FundamentalSymmetry,
) -> Result<FundamentalSymmetry> {
    if space.classify(x)? == VectorClass::Neutral {
        return Err(Error::NotNeutral);
    }
    let current = j_norm(j, x)?;
    let lower = norm_range(space, x)?.lower;
    let k = 2.0 * current.max(lower) + 1.0;
    Ok(target_norm(space, x, k)?.0)
}

/// A symmetry whose norm for x lies strictly between the two given
/// norms, at the midpoint of the admissible gap.
pub fn sandwich(
    space: &KreinSpace,
    x: &KVector,
    j1: &FundamentalSymmetry,
    j2: &FundamentalSymmetry,
) -> Result<FundamentalSymmetry> {
    let n1 = j_norm(j1, x)?;
    let n2 = j_norm(j2, x)?;
    let lower = norm_range(space, x)?.lower;
    let lo = n1.max(lower);
    if n2 - lo <= TOL_TARGET * (1.0 + n2.abs()) {
        return Err(Error::EmptyGap);
    }
    let target = (lo + n2) / 2.0;
    Ok(target_norm(space, x, target)?.0)
}

/// A symmetry J with | ||x||_J - ||alpha x||_J | < eps. Unit-modulus
/// alpha admits any symmetry; otherwise the norm is prescribed at the
/// midpoint of (lower, eps / |1 - |alpha||).
pub fn scaling_symmetry(
    space: &KreinSpace,
    x: &KVector,
    alpha: Complex64,
    eps: f64,
) -> Result<FundamentalSymmetry> {
    let class = space.classify(x)?;
    let deviation = (1.0 - alpha.norm()).abs();
    if deviation <= 1e-15 {
        return canonical_decomposition(space)?.symmetry();
    }
    let lower = match class {
        VectorClass::Neutral => 0.0,
        _ => space.quad_form(x)?.abs().sqrt(),
    };
    let bound = eps / deviation;
    if eps <= 0.0 || lower >= bound {
        return Err(Error::HypothesisViolated {
            eps,
            bound: lower * deviation,
        });
    }
    let c = (lower + bound) / 2.0;
    Ok(target_norm(space, x, c)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::verify_symmetry;
    use crate::numerics::ComplexMatrix;

    fn two_d() -> KreinSpace {
        KreinSpace::new(ComplexMatrix::diagonal(&[1.0, -1.0])).unwrap()
    }

    #[test]
    fn norm_range_examples() {
        let sp = two_d();
        let r = norm_range(&sp, &KVector::from_reals(&[2.0, 1.0])).unwrap();
        assert!((r.lower - 3.0_f64.sqrt()).abs() < 1e-15);
        assert!(r.lower_attained);

        let r = norm_range(&sp, &KVector::from_reals(&[1.0, 1.0])).unwrap();
        assert_eq!(r.lower, 0.0);
        assert!(!r.lower_attained);

        let r = norm_range(&sp, &KVector::from_reals(&[0.0, 1.0])).unwrap();
        assert_eq!(r.lower, 1.0);
        assert!(r.lower_attained);
    }

    #[test]
    fn norm_range_needs_indefinite() {
        let sp = KreinSpace::new(ComplexMatrix::diagonal(&[1.0, 2.0])).unwrap();
        assert!(matches!(
            norm_range(&sp, &KVector::from_reals(&[1.0, 0.0])),
            Err(Error::NotIndefinite)
        ));
    }

    #[test]
    fn neutral_partner_examples() {
        let sp = two_d();
        let y = find_neutral_partner(&sp, &KVector::from_reals(&[1.0, 1.0])).unwrap();
        assert!(y.sub(&KVector::from_reals(&[0.5, -0.5])).euclidean_norm() < 1e-14);

        let y = find_neutral_partner(&sp, &KVector::from_reals(&[1.0, -1.0])).unwrap();
        assert!(y.sub(&KVector::from_reals(&[0.5, 0.5])).euclidean_norm() < 1e-14);

        let sp3 = KreinSpace::new(ComplexMatrix::diagonal(&[1.0, 1.0, -1.0])).unwrap();
        let x = KVector::from_reals(&[1.0, 0.0, 1.0]);
        let y = find_neutral_partner(&sp3, &x).unwrap();
        let xy = sp3.inner(&x, &y).unwrap();
        assert!((xy - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(sp3.quad_form(&y).unwrap().abs() < 1e-12);
    }

    #[test]
    fn neutral_partner_rejects_non_neutral() {
        let sp = two_d();
        assert!(matches!(
            find_neutral_partner(&sp, &KVector::from_reals(&[1.0, 0.0])),
            Err(Error::NotNeutral)
        ));
    }

    #[test]
    fn segment_examples() {
        let sp = two_d();
        let (s0, z) = neutral_on_segment(
            &sp,
            &KVector::from_reals(&[0.0, 1.0]),
            &KVector::from_reals(&[1.0, 0.0]),
        )
        .unwrap();
        assert!((s0 - 0.5).abs() < 1e-14);
        assert!(z.sub(&KVector::from_reals(&[0.5, 0.5])).euclidean_norm() < 1e-14);

        let (s0, z) = neutral_on_segment(
            &sp,
            &KVector::from_reals(&[0.0, 2.0]),
            &KVector::from_reals(&[1.0, 0.0]),
        )
        .unwrap();
        assert!((s0 - 2.0 / 3.0).abs() < 1e-14);
        assert!(
            z.sub(&KVector::from_reals(&[2.0 / 3.0, 2.0 / 3.0]))
                .euclidean_norm()
                < 1e-14
        );

        let sp3 = KreinSpace::new(ComplexMatrix::diagonal(&[1.0, 1.0, -1.0])).unwrap();
        let (s0, _) = neutral_on_segment(
            &sp3,
            &KVector::from_reals(&[0.0, 0.0, 1.0]),
            &KVector::from_reals(&[1.0, 0.0, 0.0]),
        )
        .unwrap();
        assert!((s0 - 0.5).abs() < 1e-14);
    }

    #[test]
    fn target_worked_instance() {
        let sp = two_d();
        let x = KVector::from_reals(&[0.0, 1.0]);
        let a = 2.0_f64.sqrt();
        let (sym, trace) = target_norm(&sp, &x, a).unwrap();

        assert_eq!(trace.branch, TargetBranch::NonNeutralNeg);
        assert!(
            trace
                .y
                .sub(&KVector::from_reals(&[1.0, 0.0]))
                .euclidean_norm()
                < 1e-12
        );
        assert!((trace.s0.unwrap() - 0.5).abs() < 1e-12);
        assert!(
            trace
                .z
                .as_ref()
                .unwrap()
                .sub(&KVector::from_reals(&[0.5, 0.5]))
                .euclidean_norm()
                < 1e-12
        );
        assert!((trace.coeff_a.unwrap() - 0.25).abs() < 1e-12);
        assert!((trace.coeff_c.unwrap() - 0.5).abs() < 1e-12);
        assert!((trace.coeff_d.unwrap() + 1.0).abs() < 1e-12);
        assert!((trace.b - 2.0).abs() < 1e-12);

        // Quadratic is -t^2/2 + 2t - 1/2, proportional to t^2 - 4t + 1.
        let [a2, a1, a0] = trace.quadratic_coeffs.unwrap();
        assert!((a1 / a2 + 4.0).abs() < 1e-12);
        assert!((a0 / a2 - 1.0).abs() < 1e-12);

        let expected_t = 2.0 - 3.0_f64.sqrt();
        assert!((trace.t_b - expected_t).abs() < 1e-12);
        let expected_v = KVector::from_reals(&[(1.0 + expected_t) / 2.0, (1.0 - expected_t) / 2.0]);
        assert!(trace.v.sub(&expected_v).euclidean_norm() < 1e-12);

        let achieved = j_norm(&sym, &x).unwrap();
        assert!((achieved - a).abs() <= TOL_TARGET * (1.0 + a));
        assert!(verify_symmetry(&sp, sym.matrix()).pass);
    }

    #[test]
    fn target_boundary_returns_completed_decomposition() {
        let sp = two_d();
        let x = KVector::from_reals(&[0.0, 1.0]);
        let (sym, trace) = target_norm(&sp, &x, 1.0).unwrap();
        assert_eq!(trace.t_b, 1.0);
        assert!(trace.v.sub(&trace.y).euclidean_norm() < 1e-12);
        let expected = ComplexMatrix::diagonal(&[1.0, -1.0]);
        assert!(sym.matrix().sub(&expected).unwrap().max_abs() < 1e-10);
        assert!((j_norm(&sym, &x).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn target_neutral_instance() {
        let sp = two_d();
        let x = KVector::from_reals(&[1.0, 1.0]);
        let (sym, trace) = target_norm(&sp, &x, 1.0).unwrap();
        assert_eq!(trace.branch, TargetBranch::Neutral);
        assert!((trace.b - 1.0).abs() < 1e-14);
        assert!(trace.t_b.abs() < 1e-14);
        assert!(
            trace
                .y
                .sub(&KVector::from_reals(&[0.5, -0.5]))
                .euclidean_norm()
                < 1e-12
        );
        // New positive axis is u = (x + y)/sqrt(2), proportional to (3, 1).
        let w = &trace.v;
        let ratio = w.coords()[0] / w.coords()[1];
        assert!((ratio - Complex64::new(3.0, 0.0)).norm() < 1e-12);
        assert!((j_norm(&sym, &x).unwrap() - 1.0).abs() <= TOL_TARGET * 2.0);
    }

    #[test]
    fn target_positive_branch_via_anti_space() {
        let sp = two_d();
        let x = KVector::from_reals(&[2.0, 1.0]);
        let a = 3.0;
        let (sym, trace) = target_norm(&sp, &x, a).unwrap();
        assert_eq!(trace.branch, TargetBranch::NonNeutralPos);
        // D is recorded from the negated-form run.
        assert!((trace.coeff_d.unwrap() + 3.0).abs() < 1e-12);
        assert!((j_norm(&sym, &x).unwrap() - a).abs() <= TOL_TARGET * (1.0 + a));
        assert!(verify_symmetry(&sp, sym.matrix()).pass);
    }

    #[test]
    fn target_below_range_rejected() {
        let sp = two_d();
        let x = KVector::from_reals(&[2.0, 1.0]);
        assert!(matches!(
            target_norm(&sp, &x, 1.0),
            Err(Error::TargetBelowRange { .. })
        ));
        let neutral = KVector::from_reals(&[1.0, 1.0]);
        assert!(matches!(
            target_norm(&sp, &neutral, 0.0),
            Err(Error::TargetBelowRange { .. })
        ));
    }

    #[test]
    fn target_needs_both_signs() {
        let sp = KreinSpace::new(ComplexMatrix::diagonal(&[-1.0, -2.0])).unwrap();
        let x = KVector::from_reals(&[1.0, 0.0]);
        assert!(matches!(
            target_norm(&sp, &x, 5.0),
            Err(Error::NeedsBothSigns)
        ));
    }

    #[test]
    fn strictly_larger_examples() {
        let sp = two_d();
        let canon = canonical_decomposition(&sp).unwrap().symmetry().unwrap();

        let x = KVector::from_reals(&[0.0, 1.0]);
        let k = strictly_larger(&sp, &x, &canon).unwrap();
        assert!((j_norm(&k, &x).unwrap() - 3.0).abs() < 1e-8);

        let x = KVector::from_reals(&[2.0, 1.0]);
        let k = strictly_larger(&sp, &x, &canon).unwrap();
        let expected = 2.0 * 5.0_f64.sqrt() + 1.0;
        assert!((j_norm(&k, &x).unwrap() - expected).abs() < 1e-8);

        // Repeated application keeps growing.
        let k2 = strictly_larger(&sp, &x, &k).unwrap();
        assert!(j_norm(&k2, &x).unwrap() > j_norm(&k, &x).unwrap());
    }

    #[test]
    fn sandwich_examples() {
        let sp = two_d();
        let x = KVector::from_reals(&[0.0, 1.0]);
        let j1 = canonical_decomposition(&sp).unwrap().symmetry().unwrap();
        let j2 = target_norm(&sp, &x, 3.0).unwrap().0;
        let mid = sandwich(&sp, &x, &j1, &j2).unwrap();
        assert!((j_norm(&mid, &x).unwrap() - 2.0).abs() < 1e-8);

        let neutral = KVector::from_reals(&[1.0, 1.0]);
        let j1 = target_norm(&sp, &neutral, 0.5).unwrap().0;
        let j2 = target_norm(&sp, &neutral, 2.0).unwrap().0;
        let mid = sandwich(&sp, &neutral, &j1, &j2).unwrap();
        assert!((j_norm(&mid, &neutral).unwrap() - 1.25).abs() < 1e-8);

        assert!(matches!(sandwich(&sp, &x, &j1, &j1), Err(Error::EmptyGap)));
    }

    #[test]
    fn scaling_examples() {
        let sp = two_d();
        let x = KVector::from_reals(&[0.0, 1.0]);
        let j = scaling_symmetry(&sp, &x, Complex64::new(2.0, 0.0), 3.0).unwrap();
        let nx = j_norm(&j, &x).unwrap();
        let nax = j_norm(&j, &x.scale(Complex64::new(2.0, 0.0))).unwrap();
        assert!((nx - 2.0).abs() < 1e-8);
        assert!((nx - nax).abs() < 3.0);

        let neutral = KVector::from_reals(&[1.0, 1.0]);
        let j = scaling_symmetry(&sp, &neutral, Complex64::new(3.0, 0.0), 1.0).unwrap();
        let nx = j_norm(&j, &neutral).unwrap();
        let nax = j_norm(&j, &neutral.scale(Complex64::new(3.0, 0.0))).unwrap();
        assert!((nx - 0.25).abs() < 1e-8);
        assert!((nx - nax).abs() < 1.0);

        // Unit-modulus scaling changes nothing; any symmetry works.
        let j = scaling_symmetry(&sp, &x, Complex64::new(0.0, 1.0), 1e-6).unwrap();
        let nx = j_norm(&j, &x).unwrap();
        let nax = j_norm(&j, &x.scale(Complex64::new(0.0, 1.0))).unwrap();
        assert!((nx - nax).abs() < 1e-12);

        assert!(matches!(
            scaling_symmetry(&sp, &x, Complex64::new(2.0, 0.0), 0.5),
            Err(Error::HypothesisViolated { .. })
        ));
    }
}
