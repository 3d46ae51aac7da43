//! Numerics for finite-dimensional indefinite inner product spaces:
//! fundamental decompositions and symmetries, J-norms, construction of
//! a symmetry realizing any admissible norm for a given vector, and
//! sequence constructions with diverging, vanishing, or ratio-vanishing
//! norms.
//!
//! ```
//! use krein::{catalog, j_norm, target_norm, KVector};
//!
//! let space = catalog::minkowski(1)?;          // Gram diag(1, -1)
//! let x = KVector::from_reals(&[0.0, 1.0]);    // [x, x] = -1
//! let (sym, trace) = target_norm(&space, &x, 2.0)?;
//! assert!((j_norm(&sym, &x)? - 2.0).abs() < 1e-8);
//! assert!(trace.t_b > 0.0 && trace.t_b <= 1.0);
//! # Ok::<(), krein::Error>(())
//! ```
//!
//! All values are immutable after construction and every operation is a
//! pure function of its inputs, so everything here can be used from any
//! number of threads.

pub mod catalog;
pub mod decomposition;
pub mod error;
pub mod json;
pub mod numerics;
pub mod prescribe;
pub mod sequences;
pub mod space;

pub use decomposition::{
    canonical_decomposition, decomposition_from_positive_subspace, j_norm, projection_onto_line,
    verify_symmetry, FundamentalDecomposition, FundamentalSymmetry, SymmetryReport,
};
pub use error::{Error, Result};
pub use numerics::{hermitian_eig, null_space, quadratic_real_roots, ComplexMatrix, EigenResult};
pub use prescribe::{
    find_neutral_partner, neutral_on_segment, norm_range, sandwich, scaling_symmetry,
    strictly_larger, target_norm, NormRange, TargetBranch, TargetTrace,
};
pub use sequences::{
    diverging, ratio_neutral, ratio_orthogonal, vanishing, write_csv, RatioCase, RatioTrace,
    SequenceRow,
};
pub use space::{KVector, KreinSpace, VectorClass};
