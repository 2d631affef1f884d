//! Exact linear algebra over the rationals for pullback matrices:
//! characteristic polynomials, rational eigenvalues with Jordan structure,
//! certified spectral-radius intervals, and equal-modulus tests.
//!
//! Everything is a pure function of immutable values; no operation rounds.

mod matrix;
pub mod poly;
mod spectrum;

pub use matrix::{
    bareiss_det, clear_denominators, krylov_restriction, primitive_int_vector, IntMatrix,
    KrylovRestriction,
};
pub use poly::{
    integer_roots, isolate_real_roots, squarefree_part, yun_decomposition, IntPoly, RatPoly,
};
pub use spectrum::{
    certified_spectral_radius, graeffe_modulus_bounds, jordan_data, nth_root_interval,
    rat_to_f64, rational_spectrum, same_modulus_test, sqrt_interval, EigenvalueEstimate,
    JordanData, RatInterval, SameModulusVerdict, SpectralEntry, Spectrum,
};

use num_traits::Zero;
use thiserror::Error;

use crate::Int;

#[derive(Debug, Error)]
pub enum LinError {
    #[error("intervals for distinct roots cannot be separated at width {requested} (achieved {achieved}); raise the precision budget")]
    IntervalSeparationFailure { requested: String, achieved: String },
    #[error("vector {vector:?} is not a {lambda}-eigenvector")]
    NotEigenpair { lambda: String, vector: Vec<String> },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Characteristic polynomial `det(xI − M)`, exact integer coefficients in
/// ascending degree.
pub fn char_poly(m: &IntMatrix) -> IntPoly {
    m.char_poly()
}

/// The integral eigendivisor of a 2×2 pullback matrix written in a basis
/// `(L, H)` where `H` spans a `μ`-eigenline: with `M·e1 = a·e1 + b·e2` and
/// `M·e2 = μ·e2`, the vector `(λ−μ, b)` is a `λ`-eigenvector whenever `λ` is
/// the other eigenvalue. The eigenvector equation is verified exactly and
/// `NotEigenpair` is returned on failure.
pub fn integral_eigendivisor(
    m: &IntMatrix,
    lambda: &Int,
    mu: &Int,
) -> Result<Vec<Int>, LinError> {
    if m.dim() != 2 {
        return Err(LinError::DimensionMismatch(format!(
            "integral_eigendivisor expects a 2x2 matrix, got {}x{}",
            m.dim(),
            m.dim()
        )));
    }
    let b = m.get(1, 0).clone();
    let v = vec![lambda - mu, b];
    let image = m.mul_int_vec(&v);
    let expected: Vec<Int> = v.iter().map(|x| x * lambda).collect();
    if image != expected || v.iter().all(|x| x.is_zero()) {
        return Err(LinError::NotEigenpair {
            lambda: lambda.to_string(),
            vector: v.iter().map(|x| x.to_string()).collect(),
        });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn char_poly_identity() {
        let p = char_poly(&IntMatrix::identity(2));
        assert_eq!(p, IntPoly::from_i64(&[1, -2, 1]));
    }

    #[test]
    fn char_poly_ramified_picard_matrix() {
        // Basis (K_X, R) with trace 4 and determinant 3: (x−1)(x−3).
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![-1, 3]]);
        assert_eq!(char_poly(&m), IntPoly::from_i64(&[3, -4, 1]));
    }

    #[test]
    fn char_poly_swap() {
        let m = IntMatrix::from_rows(&[vec![0, 2], vec![1, 0]]);
        assert_eq!(char_poly(&m), IntPoly::from_i64(&[-2, 0, 1]));
    }

    #[test]
    fn eigendivisor_triangular_example() {
        let m = IntMatrix::from_rows(&[vec![3, 0], vec![5, 1]]);
        let v = integral_eigendivisor(&m, &Int::from(3), &Int::one()).unwrap();
        assert_eq!(v, vec![Int::from(2), Int::from(5)]);
        let image = m.mul_int_vec(&v);
        assert_eq!(image, vec![Int::from(6), Int::from(15)]);
    }

    #[test]
    fn eigendivisor_diag_and_unipotent_examples() {
        let m = IntMatrix::from_rows(&[vec![4, 0], vec![0, 1]]);
        let v = integral_eigendivisor(&m, &Int::from(4), &Int::one()).unwrap();
        assert_eq!(v, vec![Int::from(3), Int::from(0)]);

        let m = IntMatrix::from_rows(&[vec![2, 0], vec![1, 1]]);
        let v = integral_eigendivisor(&m, &Int::from(2), &Int::one()).unwrap();
        assert_eq!(v, vec![Int::one(), Int::one()]);
    }

    #[test]
    fn eigendivisor_rejects_non_eigenpair() {
        let m = IntMatrix::from_rows(&[vec![3, 0], vec![5, 1]]);
        assert!(integral_eigendivisor(&m, &Int::from(7), &Int::one()).is_err());
    }
}
