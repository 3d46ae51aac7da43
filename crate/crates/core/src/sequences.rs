//! Sequences of fundamental symmetries with prescribed norm behavior:
//! diverging norms, vanishing norms, and vanishing norm ratios.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::Serialize;

use crate::decomposition::{
    complement_parts, decomposition_from_positive_subspace, j_norm, FundamentalSymmetry,
    TOL_AXIOM_REL,
};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::prescribe::target_norm;
use crate::space::{KVector, KreinSpace, VectorClass};

/// One step of a symmetry sequence.
#[derive(Debug, Clone)]
pub struct SequenceRow {
    pub index: usize,
    /// The step parameter: the norm target a_n for the diverging and
    /// vanishing sequences, the axis parameter t_n for the ratio
    /// sequences.
    pub param: f64,
    pub symmetry: FundamentalSymmetry,
    pub norm_x: f64,
    pub norm_y: Option<f64>,
    /// norm_y / norm_x when both are present.
    pub ratio: Option<f64>,
}

/// Which ratio construction produced a [`RatioTrace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RatioCase {
    /// Orthogonal pair, [y, y] > 0.
    OrthogonalPos,
    /// Orthogonal pair, [y, y] < 0; reduced to the positive case on the
    /// negated form.
    OrthogonalNeg,
    /// Non-orthogonal pair with x neutral.
    NonOrthNeutralX,
    /// Non-orthogonal pair with x non-neutral; rides on the vanishing
    /// sequence for y.
    NonOrthNonNeutralX,
}

/// Fixed data of a ratio construction, shared by all rows.
#[derive(Debug, Clone, Serialize)]
pub struct RatioTrace {
    pub x1: KVector,
    pub x2: Option<KVector>,
    pub y1: Option<KVector>,
    pub e1: Option<KVector>,
    pub s0: Option<f64>,
    pub case: RatioCase,
}

fn vector_at(xs: &[KVector], k: usize) -> &KVector {
    &xs[k.min(xs.len() - 1)]
}

/// Symmetries J_1, J_2, ... with strictly increasing ||x_k||_{J_k},
/// diverging at least geometrically. Row k targets
/// max(|[x_k, x_k]|^{1/2}, previous norm) + max(1, previous norm);
/// the previous norm for the first row comes from `j0`. When `xs` is
/// shorter than `steps` the last vector repeats.
pub fn diverging(
    space: &KreinSpace,
    xs: &[KVector],
    j0: &FundamentalSymmetry,
    steps: usize,
) -> Result<Vec<SequenceRow>> {
    if xs.is_empty() {
        return Err(Error::ZeroVector);
    }
    for x in xs {
        if x.is_zero() {
            return Err(Error::ZeroVector);
        }
    }
    let mut prev = j_norm(j0, vector_at(xs, 0))?;
    let mut rows = Vec::with_capacity(steps);
    for k in 1..=steps {
        let x = vector_at(xs, k - 1);
        let lower = space.quad_form(x)?.abs().sqrt();
        let a_k = lower.max(prev) + prev.max(1.0);
        let (sym, trace) = target_norm(space, x, a_k)?;
        // Row norms come from the construction's closed form, which is
        // exact where the dense-matrix route rounds at eps * ||J||.
        let norm = trace.achieved_norm();
        rows.push(SequenceRow {
            index: k,
            param: a_k,
            symmetry: sym,
            norm_x: norm,
            norm_y: None,
            ratio: None,
        });
        prev = norm;
    }
    Ok(rows)
}

/// Symmetries with ||x_k||_{J_k} halving each step, for neutral x_k.
/// The first row targets norm 1; row k then targets half the previous
/// norm, so row k sits at 2^{1-k}.
pub fn vanishing(space: &KreinSpace, xs: &[KVector], steps: usize) -> Result<Vec<SequenceRow>> {
    if xs.is_empty() {
        return Err(Error::ZeroVector);
    }
    for x in xs.iter().take(steps.max(1)) {
        if space.classify(x)? != VectorClass::Neutral {
            return Err(Error::NotNeutral);
        }
    }
    let mut rows = Vec::with_capacity(steps);
    let mut prev = 1.0;
    for k in 1..=steps {
        let x = vector_at(xs, k - 1);
        if space.classify(x)? != VectorClass::Neutral {
            return Err(Error::NotNeutral);
        }
        let a_k = if k == 1 { 1.0 } else { prev / 2.0 };
        let (sym, trace) = target_norm(space, x, a_k)?;
        let norm = trace.achieved_norm();
        rows.push(SequenceRow {
            index: k,
            param: a_k,
            symmetry: sym,
            norm_x: norm,
            norm_y: None,
            ratio: None,
        });
        prev = norm;
    }
    Ok(rows)
}

fn check_independent(x: &KVector, y: &KVector) -> Result<()> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::ZeroVector);
    }
    let dot: Complex64 = x
        .coords()
        .iter()
        .zip(y.coords())
        .map(|(&a, &b)| a.conj() * b)
        .sum();
    let cos_sq = dot.norm_sqr() / (x.euclidean_norm().powi(2) * y.euclidean_norm().powi(2));
    if cos_sq >= 1.0 - 1e-12 {
        return Err(Error::LinearlyDependent);
    }
    Ok(())
}

/// Symmetries J_n with ||y||_{J_n} constant and ||x||_{J_n} divergent,
/// so the ratio ||y|| / ||x|| vanishes. Requires x, y non-neutral,
/// orthogonal, independent, and the sign/dimension pattern: either
/// [y, y] > 0 with dim K+ > 1 and dim K- > 0, or the mirror image with
/// [y, y] < 0 (handled on the negated form).
///
/// Rows run n = 2..N+1 with axis parameter t_n = n^{-2}; quadratic decay
/// makes the ratio drop by an order of magnitude within fifty rows.
pub fn ratio_orthogonal(
    space: &KreinSpace,
    x: &KVector,
    y: &KVector,
    n_steps: usize,
) -> Result<(Vec<SequenceRow>, RatioTrace)> {
    check_independent(x, y)?;
    let pairing = space.inner(x, y)?;
    let orth_tol = TOL_AXIOM_REL * space.gram_frobenius() * x.euclidean_norm() * y.euclidean_norm();
    if pairing.norm() > orth_tol {
        return Err(Error::NotOrthogonal {
            inner: pairing.norm(),
        });
    }
    if space.classify(x)? == VectorClass::Neutral {
        return Err(Error::DimensionCondition);
    }
    let (p, q) = space.signature();
    match space.classify(y)? {
        VectorClass::Positive => {
            if p <= 1 || q == 0 {
                return Err(Error::DimensionCondition);
            }
            ratio_orthogonal_positive(space, x, y, n_steps, RatioCase::OrthogonalPos)
        }
        VectorClass::Negative => {
            if q <= 1 || p == 0 {
                return Err(Error::DimensionCondition);
            }
            // Negate the form: y becomes positive, the construction runs
            // unchanged, and each symmetry comes back negated.
            let anti = space.anti_space();
            let (anti_rows, mut trace) =
                ratio_orthogonal_positive(&anti, x, y, n_steps, RatioCase::OrthogonalNeg)?;
            let mut rows = Vec::with_capacity(anti_rows.len());
            for row in anti_rows {
                let j = row.symmetry.matrix().scale(Complex64::new(-1.0, 0.0));
                let sym = FundamentalSymmetry::from_matrix(space, j)?;
                let norm_x = j_norm(&sym, x)?;
                let norm_y = j_norm(&sym, y)?;
                rows.push(SequenceRow {
                    index: row.index,
                    param: row.param,
                    symmetry: sym,
                    norm_x,
                    norm_y: Some(norm_y),
                    ratio: Some(norm_y / norm_x),
                });
            }
            trace.case = RatioCase::OrthogonalNeg;
            Ok((rows, trace))
        }
        VectorClass::Neutral => Err(Error::DimensionCondition),
    }
}

fn ratio_orthogonal_positive(
    space: &KreinSpace,
    x: &KVector,
    y: &KVector,
    n_steps: usize,
    case: RatioCase,
) -> Result<(Vec<SequenceRow>, RatioTrace)> {
    let qx = space.quad_form(x)?;
    let qy = space.quad_form(y)?;
    let y_unit = y.scale(Complex64::new(1.0 / qy.sqrt(), 0.0));

    // Five-way split: L1+ [+] span{x1} [+] span{x2} [+] L2- [+] span{y1},
    // with x1 = y and the normalized copy of x placed on its own side.
    let x1 = y.clone();
    let (x2, y1, l1_plus) = if qx > 0.0 {
        let x2 = x.scale(Complex64::new(1.0 / qx.sqrt(), 0.0));
        let (l1_plus, rest_minus) = complement_parts(space, &[y_unit, x2.clone()])?;
        let y1 = rest_minus
            .first()
            .cloned()
            .ok_or(Error::DimensionCondition)?;
        (x2, y1, l1_plus)
    } else {
        let y1 = x.scale(Complex64::new(1.0 / (-qx).sqrt(), 0.0));
        let (rest_plus, _l2_minus) = complement_parts(space, &[y_unit, y1.clone()])?;
        let Some((x2, l1_plus)) = rest_plus.split_first() else {
            return Err(Error::DimensionCondition);
        };
        (x2.clone(), y1, l1_plus.to_vec())
    };

    let (s0, e1) = crate::prescribe::neutral_on_segment(space, &y1, &x2)?;

    let mut rows = Vec::with_capacity(n_steps);
    for n in 2..=(n_steps + 1) {
        let t = 1.0 / ((n * n) as f64);
        let v = KVector::combine(
            Complex64::new(t, 0.0),
            &x2,
            Complex64::new(1.0 - t, 0.0),
            &e1,
        );
        let mut cols: Vec<Vec<Complex64>> = l1_plus.iter().map(|k| k.coords().to_vec()).collect();
        cols.push(x1.coords().to_vec());
        cols.push(v.coords().to_vec());
        let basis_plus = ComplexMatrix::from_columns(&cols)?;
        let sym = decomposition_from_positive_subspace(space, &basis_plus)?.symmetry()?;
        let norm_x = j_norm(&sym, x)?;
        let norm_y = j_norm(&sym, y)?;
        rows.push(SequenceRow {
            index: n,
            param: t,
            symmetry: sym,
            norm_x,
            norm_y: Some(norm_y),
            ratio: Some(norm_y / norm_x),
        });
    }
    let trace = RatioTrace {
        x1,
        x2: Some(x2),
        y1: Some(y1),
        e1: Some(e1),
        s0: Some(s0),
        case,
    };
    Ok((rows, trace))
}

/// Symmetries J_n with ||y||_{J_n} / ||x||_{J_n} vanishing for a
/// neutral y that pairs non-degenerately with x.
///
/// Non-neutral x rides on the vanishing sequence for y, since 1/||x|| is
/// bounded by the norm-range lower bound. Neutral x uses the hyperbolic
/// pair x1 = (x + y')/sqrt(2), y1 = (x - y')/sqrt(2) with y' scaled to
/// [x, y'] = 1, and the axis v(t_n) = x1 + t_n y1 with t_n = 1/n - 1.
pub fn ratio_neutral(
    space: &KreinSpace,
    x: &KVector,
    y: &KVector,
    n_steps: usize,
) -> Result<(Vec<SequenceRow>, RatioTrace)> {
    if space.classify(y)? != VectorClass::Neutral {
        return Err(Error::NotNeutral);
    }
    check_independent(x, y)?;
    let pairing = space.inner(x, y)?;
    let orth_tol = TOL_AXIOM_REL * space.gram_frobenius() * x.euclidean_norm() * y.euclidean_norm();
    if pairing.norm() <= orth_tol {
        return Err(Error::Orthogonal);
    }

    if space.classify(x)? != VectorClass::Neutral {
        // ||x||_{J_n} >= |[x, x]|^{1/2} > 0 bounds the ratio by a
        // multiple of the vanishing norms of y.
        let base = vanishing(space, std::slice::from_ref(y), n_steps)?;
        let mut rows = Vec::with_capacity(base.len());
        for row in base {
            let norm_x = j_norm(&row.symmetry, x)?;
            let norm_y = row.norm_x;
            rows.push(SequenceRow {
                index: row.index,
                param: row.param,
                symmetry: row.symmetry,
                norm_x,
                norm_y: Some(norm_y),
                ratio: Some(norm_y / norm_x),
            });
        }
        let trace = RatioTrace {
            x1: x.clone(),
            x2: None,
            y1: None,
            e1: None,
            s0: None,
            case: RatioCase::NonOrthNonNeutralX,
        };
        return Ok((rows, trace));
    }

    // Both neutral: rescale so [x, y'] = 1 and form the hyperbolic pair.
    let y_scaled = y.scale(Complex64::new(1.0, 0.0) / pairing.conj());
    let inv_sqrt2 = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
    let x1 = x.add(&y_scaled).scale(inv_sqrt2);
    let y1 = x.sub(&y_scaled).scale(inv_sqrt2);
    let (l_plus, _l_minus) = complement_parts(space, &[x1.clone(), y1.clone()])?;

    let mut rows = Vec::with_capacity(n_steps);
    for n in 1..=n_steps {
        let t = -1.0 + 1.0 / (n as f64);
        let v = x1.add(&y1.scale(Complex64::new(t, 0.0)));
        let mut cols: Vec<Vec<Complex64>> = l_plus.iter().map(|k| k.coords().to_vec()).collect();
        cols.push(v.coords().to_vec());
        let basis_plus = ComplexMatrix::from_columns(&cols)?;
        let sym = decomposition_from_positive_subspace(space, &basis_plus)?.symmetry()?;
        let norm_x = j_norm(&sym, x)?;
        let norm_y = j_norm(&sym, y)?;
        rows.push(SequenceRow {
            index: n,
            param: t,
            symmetry: sym,
            norm_x,
            norm_y: Some(norm_y),
            ratio: Some(norm_y / norm_x),
        });
    }
    let trace = RatioTrace {
        x1,
        x2: None,
        y1: Some(y1),
        e1: None,
        s0: None,
        case: RatioCase::NonOrthNeutralX,
    };
    Ok((rows, trace))
}

/// Writes rows as CSV: header `n,param,norm_x,norm_y,ratio`, floats at
/// 17 significant digits, absent fields empty.
pub fn write_csv<W: Write>(rows: &[SequenceRow], mut w: W) -> io::Result<()> {
    writeln!(w, "n,param,norm_x,norm_y,ratio")?;
    for row in rows {
        let opt = |v: Option<f64>| v.map_or(String::new(), |v| format!("{v:.16e}"));
        writeln!(
            w,
            "{},{:.16e},{:.16e},{},{}",
            row.index,
            row.param,
            row.norm_x,
            opt(row.norm_y),
            opt(row.ratio)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::canonical_decomposition;

    fn two_d() -> KreinSpace {
        KreinSpace::new(ComplexMatrix::diagonal(&[1.0, -1.0])).unwrap()
    }

    #[test]
    fn diverging_doubles_past_power_bound() {
        let sp = two_d();
        let j0 = canonical_decomposition(&sp).unwrap().symmetry().unwrap();
        let x = KVector::from_reals(&[0.0, 1.0]);
        let rows = diverging(&sp, &[x], &j0, 5).unwrap();
        assert_eq!(rows.len(), 5);
        let mut prev = 1.0;
        for (k, row) in rows.iter().enumerate() {
            assert!(row.norm_x > prev);
            assert!(row.norm_x >= 2f64.powi(k as i32 + 1) - 1.0 - 1e-9);
            prev = row.norm_x;
        }
    }

    #[test]
    fn diverging_single_step_and_neutral() {
        let sp = two_d();
        let j0 = canonical_decomposition(&sp).unwrap().symmetry().unwrap();
        let x = KVector::from_reals(&[0.0, 1.0]);
        let rows = diverging(&sp, std::slice::from_ref(&x), &j0, 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].norm_x > j_norm(&j0, &x).unwrap());

        let neutral = KVector::from_reals(&[1.0, 1.0]);
        let rows = diverging(&sp, &[neutral], &j0, 3).unwrap();
        assert!(rows.windows(2).all(|w| w[1].norm_x > w[0].norm_x));
    }

    #[test]
    fn vanishing_halves() {
        let sp = two_d();
        let x = KVector::from_reals(&[1.0, 1.0]);
        let rows = vanishing(&sp, &[x], 4).unwrap();
        let expected = [1.0, 0.5, 0.25, 0.125];
        for (row, want) in rows.iter().zip(expected) {
            assert!((row.norm_x - want).abs() < 1e-9 * want);
        }
    }

    #[test]
    fn vanishing_mixed_neutrals_decrease() {
        let sp = two_d();
        let xs = [
            KVector::from_reals(&[1.0, 1.0]),
            KVector::from_reals(&[1.0, -1.0]),
        ];
        let rows = vanishing(&sp, &xs, 4).unwrap();
        assert!(rows.windows(2).all(|w| w[1].norm_x < w[0].norm_x));
    }

    #[test]
    fn vanishing_rejects_non_neutral() {
        let sp = two_d();
        let xs = [KVector::from_reals(&[1.0, 0.0])];
        assert!(matches!(vanishing(&sp, &xs, 3), Err(Error::NotNeutral)));
    }

    #[test]
    fn ratio_orthogonal_c1_instance() {
        let sp = KreinSpace::new(ComplexMatrix::diagonal(&[1.0, 1.0, -1.0])).unwrap();
        let y = KVector::from_reals(&[1.0, 0.0, 0.0]);
        let x = KVector::from_reals(&[0.0, 2.0_f64.sqrt(), 1.0]);
        let (rows, trace) = ratio_orthogonal(&sp, &x, &y, 10).unwrap();
        assert_eq!(trace.case, RatioCase::OrthogonalPos);
        assert_eq!(rows.len(), 10);
        for row in &rows {
            assert!((row.norm_y.unwrap() - 1.0).abs() < 1e-9);
        }
        assert!(rows
            .windows(2)
            .all(|w| w[1].ratio.unwrap() < w[0].ratio.unwrap()));
    }

    #[test]
    fn ratio_orthogonal_c2_reduces_to_anti_space() {
        let sp = KreinSpace::new(ComplexMatrix::diagonal(&[1.0, -1.0, -1.0])).unwrap();
        let y = KVector::from_reals(&[0.0, 1.0, 0.0]);
        let x = KVector::from_reals(&[1.0, 0.0, 2.0_f64.sqrt()]);
        assert!((sp.quad_form(&x).unwrap() + 1.0).abs() < 1e-12);
        let (rows, trace) = ratio_orthogonal(&sp, &x, &y, 10).unwrap();
        assert_eq!(trace.case, RatioCase::OrthogonalNeg);
        for row in &rows {
            assert!((row.norm_y.unwrap() - 1.0).abs() < 1e-9);
        }
        assert!(rows
            .windows(2)
            .all(|w| w[1].ratio.unwrap() < w[0].ratio.unwrap()));
    }

    #[test]
    fn ratio_orthogonal_dim2_rejected() {
        let sp = two_d();
        let x = KVector::from_reals(&[1.0, 0.0]);
        let y = KVector::from_reals(&[0.0, 1.0]);
        // [x, y] = 0 but neither dimension pattern can hold at dim 2.
        assert!(matches!(
            ratio_orthogonal(&sp, &y, &x, 5),
            Err(Error::DimensionCondition)
        ));
    }

    #[test]
    fn ratio_neutral_closed_forms() {
        let sp = two_d();
        let x = KVector::from_reals(&[1.0, 1.0]);
        let y = KVector::from_reals(&[0.5, -0.5]);
        let (rows, trace) = ratio_neutral(&sp, &x, &y, 10).unwrap();
        assert_eq!(trace.case, RatioCase::NonOrthNeutralX);
        for row in &rows {
            let n = row.index as f64;
            let expect_x_sq = 2.0 * n - 1.0;
            assert!((row.norm_x.powi(2) - expect_x_sq).abs() < 1e-9 * expect_x_sq);
            let expect_y_sq = 1.0 / (2.0 * n - 1.0);
            let ny = row.norm_y.unwrap();
            assert!((ny.powi(2) - expect_y_sq).abs() < 1e-9 * expect_y_sq);
            assert!((row.norm_x * ny - 1.0).abs() < 1e-9);
        }
        assert!((rows[9].ratio.unwrap() - 1.0 / 19.0).abs() < 1e-9);
    }

    #[test]
    fn ratio_neutral_non_neutral_x_vanishes() {
        let sp = two_d();
        let x = KVector::from_reals(&[1.0, 0.0]);
        let y = KVector::from_reals(&[1.0, 1.0]);
        let (rows, trace) = ratio_neutral(&sp, &x, &y, 6).unwrap();
        assert_eq!(trace.case, RatioCase::NonOrthNonNeutralX);
        for row in &rows {
            // 1/||x|| is bounded by the norm-range floor, here 1.
            assert!(row.ratio.unwrap() <= row.norm_y.unwrap() + 1e-12);
        }
        assert!(rows
            .windows(2)
            .all(|w| w[1].ratio.unwrap() < w[0].ratio.unwrap()));
    }

    #[test]
    fn ratio_neutral_input_checks() {
        let sp3 = KreinSpace::new(ComplexMatrix::diagonal(&[1.0, 1.0, -1.0])).unwrap();
        let y = KVector::from_reals(&[1.0, 0.0, 1.0]);
        let x = KVector::from_reals(&[0.0, 1.0, 0.0]);
        assert!(matches!(
            ratio_neutral(&sp3, &x, &y, 3),
            Err(Error::Orthogonal)
        ));

        let sp = two_d();
        let x = KVector::from_reals(&[1.0, 1.0]);
        let y_dep = KVector::from_reals(&[0.5, 0.5]);
        assert!(matches!(
            ratio_neutral(&sp, &x, &y_dep, 3),
            Err(Error::LinearlyDependent)
        ));

        let y_bad = KVector::from_reals(&[1.0, 0.0]);
        assert!(matches!(
            ratio_neutral(&sp, &x, &y_bad, 3),
            Err(Error::NotNeutral)
        ));
    }

    #[test]
    fn csv_layout() {
        let sp = two_d();
        let x = KVector::from_reals(&[1.0, 1.0]);
        let rows = vanishing(&sp, &[x], 2).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "n,param,norm_x,norm_y,ratio");
        let first = lines.next().unwrap();
        assert!(first.starts_with("1,"));
        assert!(first.ends_with(",,"));
    }
}
