//! Built-in spaces and symmetry families used by the CLI and the
//! acceptance suite.

use crate::decomposition::{
    canonical_decomposition, decomposition_from_positive_subspace, FundamentalDecomposition,
    FundamentalSymmetry,
};
use crate::error::{Error, Result};
use crate::numerics::{quadratic_real_roots, ComplexMatrix};
use crate::space::KreinSpace;

/// Minkowski-type space of dimension n + 1: Gram diag(1, ..., 1, -1).
pub fn minkowski(n: usize) -> Result<KreinSpace> {
    if n < 1 {
        return Err(Error::ParamOutOfRange {
            param: n as f64,
            reason: "needs at least one spatial dimension",
        });
    }
    let mut diag = vec![1.0; n + 1];
    diag[n] = -1.0;
    KreinSpace::new(ComplexMatrix::diagonal(&diag))
}

/// Alternating-sign truncation of the sequence space: Gram
/// diag(-1, 1, -1, 1, ...) of size n, signature (floor(n/2), ceil(n/2)).
pub fn alternating_l2(n: usize) -> Result<KreinSpace> {
    if n < 2 {
        return Err(Error::ParamOutOfRange {
            param: n as f64,
            reason: "needs dimension at least 2",
        });
    }
    let diag: Vec<f64> = (1..=n)
        .map(|i| if i % 2 == 1 { -1.0 } else { 1.0 })
        .collect();
    KreinSpace::new(ComplexMatrix::diagonal(&diag))
}

/// The one-parameter symmetry family on diag(1, -1) whose positive part
/// is span{(n, 1)}, n > 1, in closed form.
pub fn eg1_closed_form(n: f64) -> ComplexMatrix {
    let d = n * n - 1.0;
    ComplexMatrix::from_real_rows(&[
        &[(n * n + 1.0) / d, -2.0 * n / d],
        &[2.0 * n / d, -(n * n + 1.0) / d],
    ])
    .expect("fixed shape")
}

/// The same family built constructively from its positive subspace.
pub fn eg1_symmetry(n: f64) -> Result<FundamentalSymmetry> {
    if n.is_nan() || n <= 1.0 {
        return Err(Error::ParamOutOfRange {
            param: n,
            reason: "span{(n, 1)} is positive only for n > 1",
        });
    }
    let space = minkowski(1)?;
    let basis = ComplexMatrix::from_real_rows(&[&[n], &[1.0]])?;
    decomposition_from_positive_subspace(&space, &basis)?.symmetry()
}

/// Squared J-norm of a real vector under the family symmetry:
/// ((n^2 + 1)(x1^2 + x2^2) - 4 n x1 x2) / (n^2 - 1).
pub fn eg1_norm_sq(n: f64, x1: f64, x2: f64) -> f64 {
    ((n * n + 1.0) * (x1 * x1 + x2 * x2) - 4.0 * n * x1 * x2) / (n * n - 1.0)
}

/// Family parameters n > 1 at which the squared norm of the given real
/// vector equals `target_sq`, found by solving the quadratic
/// (s - b) n^2 - 4 x1 x2 n + (s + b) = 0 with s = x1^2 + x2^2.
pub fn eg1_params_for_norm_sq(x1: f64, x2: f64, target_sq: f64) -> Result<Vec<f64>> {
    let s = x1 * x1 + x2 * x2;
    let roots = quadratic_real_roots(s - target_sq, -4.0 * x1 * x2, s + target_sq)?;
    Ok(roots.into_iter().filter(|&n| n > 1.0).collect())
}

/// The decomposition family on 2-D Minkowski space with positive part
/// span{((n+1)/n, (n-1)/n)}, n > 1.
pub fn example_final_decomposition(n: f64) -> Result<FundamentalDecomposition> {
    if n.is_nan() || n <= 1.0 {
        return Err(Error::ParamOutOfRange {
            param: n,
            reason: "the family requires n > 1",
        });
    }
    let space = minkowski(1)?;
    let basis = ComplexMatrix::from_real_rows(&[&[(n + 1.0) / n], &[(n - 1.0) / n]])?;
    decomposition_from_positive_subspace(&space, &basis)
}

/// A named entry addressable from the command line.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub address: &'static str,
    pub summary: &'static str,
    /// Entries without a builder are listed for completeness only.
    pub buildable: bool,
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "Minkowski space",
            address: "minkowski:<n>",
            summary: "dimension n+1, Gram diag(1,...,1,-1), signature (n,1)",
            buildable: true,
        },
        CatalogEntry {
            name: "Alternating sequence space",
            address: "alt-l2:<n>",
            summary: "dimension n, Gram diag(-1,1,-1,...), truncation of the alternating form",
            buildable: true,
        },
        CatalogEntry {
            name: "Two-dimensional symmetry family",
            address: "eg1:<n>",
            summary: "J_n on diag(1,-1) with positive part span{(n,1)}, n > 1",
            buildable: true,
        },
        CatalogEntry {
            name: "Hyperbolic decomposition family",
            address: "final:<n>",
            summary: "decomposition on diag(1,-1) with positive part span{((n+1)/n,(n-1)/n)}, n > 1",
            buildable: true,
        },
        CatalogEntry {
            name: "Continuous functions on [-1,1]",
            address: "(none)",
            summary: "even/odd splitting under the reflected-pairing form; infinite-dimensional, no builder",
            buildable: false,
        },
        CatalogEntry {
            name: "Square-integrable functions of a split measure",
            address: "(none)",
            summary: "difference of integrals over mutually singular measures; infinite-dimensional, no builder",
            buildable: false,
        },
    ]
}

fn split_address(address: &str) -> Result<(&str, &str)> {
    address
        .split_once(':')
        .ok_or_else(|| Error::UnknownCatalogEntry(address.to_string()))
}

fn int_param(address: &str, raw: &str) -> Result<usize> {
    raw.parse()
        .map_err(|_| Error::UnknownCatalogEntry(address.to_string()))
}

fn real_param(address: &str, raw: &str) -> Result<f64> {
    raw.parse()
        .map_err(|_| Error::UnknownCatalogEntry(address.to_string()))
}

/// Resolves a catalog address like `minkowski:3` to its space.
pub fn catalog_space(address: &str) -> Result<KreinSpace> {
    let (kind, raw) = split_address(address)?;
    match kind {
        "minkowski" => minkowski(int_param(address, raw)?),
        "alt-l2" => alternating_l2(int_param(address, raw)?),
        "eg1" | "final" => {
            let n = real_param(address, raw)?;
            if n.is_nan() || n <= 1.0 {
                return Err(Error::ParamOutOfRange {
                    param: n,
                    reason: "the family requires n > 1",
                });
            }
            minkowski(1)
        }
        _ => Err(Error::UnknownCatalogEntry(address.to_string())),
    }
}

/// Resolves a catalog address to a symmetry on its own space. Plain
/// spaces yield their canonical symmetry.
pub fn catalog_symmetry(address: &str) -> Result<FundamentalSymmetry> {
    let (kind, raw) = split_address(address)?;
    match kind {
        "eg1" => eg1_symmetry(real_param(address, raw)?),
        "final" => example_final_decomposition(real_param(address, raw)?)?.symmetry(),
        "minkowski" | "alt-l2" => canonical_decomposition(&catalog_space(address)?)?.symmetry(),
        _ => Err(Error::UnknownCatalogEntry(address.to_string())),
    }
}
