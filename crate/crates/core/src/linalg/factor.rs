//! Product-state factorization of bipartite vectors.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::vector::StateVector;

/// Outcome of a bipartite factorization attempt.
#[derive(Debug, Clone)]
pub enum Factorization {
    /// v = q ⊗ y with ‖q‖ = 1 and ‖y‖ carrying the overall amplitude.
    Product { q: StateVector, y: StateVector },
    /// The input was (numerically) the zero vector.
    Zero,
    /// Schmidt rank above one; no product form exists.
    Entangled,
}

impl Factorization {
    pub fn is_product(&self) -> bool {
        matches!(self, Factorization::Product { .. })
    }
}

/// Tries to split `v` ∈ ℂ^{dim_q·dim_y} into q ⊗ y (first factor of
/// dimension `dim_q`, index = q·dim_y + y).
///
/// The first factor comes back normalized with its largest-magnitude
/// amplitude real positive; the second factor absorbs the norm and the
/// residual phase, so `q ⊗ y` reconstructs `v` within `tol`.
pub fn factor_product(
    v: &StateVector,
    dim_q: usize,
    dim_y: usize,
    tol: f64,
) -> Result<Factorization> {
    if v.dim() != dim_q * dim_y {
        return Err(Error::DimensionMismatch {
            expected: dim_q * dim_y,
            got: v.dim(),
        });
    }
    if tol <= 0.0 {
        return Err(Error::BadTolerance(tol));
    }
    if v.norm() <= tol {
        return Ok(Factorization::Zero);
    }
    let m = ComplexMatrix::from_fn(dim_q, dim_y, |q, y| v.amplitudes()[q * dim_y + y]);
    let (u, s, vh) = m.svd();
    if s.len() > 1 && s[1] > tol * s[0] {
        return Ok(Factorization::Entangled);
    }
    // M = UΣV†, so the rank-one form is v[q·dy+y] = σ₀·u[q]·v†[0,y]
    let q = u.column(0);
    let y = StateVector::from_amplitudes(
        (0..dim_y)
            .map(|k| vh.get(0, k) * Complex64::new(s[0], 0.0))
            .collect(),
    );
    // phase convention: largest-magnitude amplitude of q real positive
    let canon = q.phase_canonical();
    let phase = if q.norm() > 0.0 {
        // q = canon * e^{iθ}; shift θ onto y
        let k = (0..dim_q)
            .max_by(|&a, &b| {
                q.amplitudes()[a]
                    .norm()
                    .total_cmp(&q.amplitudes()[b].norm())
            })
            .unwrap();
        q.amplitudes()[k] / canon.amplitudes()[k]
    } else {
        Complex64::new(1.0, 0.0)
    };
    Ok(Factorization::Product {
        q: canon,
        y: y.scale(phase),
    })
}
