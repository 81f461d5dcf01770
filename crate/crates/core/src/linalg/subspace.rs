//! Subspaces of ℂⁿ held as orthonormal bases.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::vector::StateVector;

/// A subspace with an explicit orthonormal basis; the empty basis is the
/// zero subspace.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<StateVector>,
    tol: f64,
}

impl Subspace {
    /// Wraps an existing basis, validating pairwise orthonormality.
    pub fn new(ambient_dim: usize, basis: Vec<StateVector>, tol: f64) -> Result<Self> {
        if tol <= 0.0 {
            return Err(Error::BadTolerance(tol));
        }
        for v in &basis {
            if v.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.dim(),
                });
            }
        }
        let s = Self {
            ambient_dim,
            basis,
            tol,
        };
        let res = s.gram_residual();
        if res > tol {
            return Err(Error::NotIsometry { residual: res });
        }
        Ok(s)
    }

    pub fn zero(ambient_dim: usize, tol: f64) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
            tol,
        }
    }

    pub fn full(ambient_dim: usize, tol: f64) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| StateVector::basis_state(ambient_dim, i))
            .collect();
        Self {
            ambient_dim,
            basis,
            tol,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[StateVector] {
        &self.basis
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Deviation of the Gram matrix from the identity.
    pub fn gram_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let g = a.inner(b);
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - Complex64::new(want, 0.0)).norm());
            }
        }
        worst
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &StateVector) -> StateVector {
        assert_eq!(v.dim(), self.ambient_dim);
        let mut out = StateVector::zeros(self.ambient_dim);
        for b in &self.basis {
            out = out.add(&b.scale(b.inner(v)));
        }
        out
    }

    /// Norm of the component of `v` outside the subspace.
    pub fn residual_norm(&self, v: &StateVector) -> f64 {
        v.sub(&self.project(v)).norm()
    }

    pub fn contains_vector(&self, v: &StateVector, tol: f64) -> bool {
        self.residual_norm(v) <= tol
    }

    /// Projector matrix Σ |b⟩⟨b|.
    pub fn projector(&self) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(self.ambient_dim, self.ambient_dim);
        for b in &self.basis {
            for i in 0..self.ambient_dim {
                for j in 0..self.ambient_dim {
                    let add = b.amplitudes()[i] * b.amplitudes()[j].conj();
                    p.set(i, j, p.get(i, j) + add);
                }
            }
        }
        p
    }

    /// True iff every basis vector of `inner` lies in `self` within `tol`.
    pub fn contains_subspace(&self, inner: &Subspace, tol: f64) -> bool {
        inner.basis.iter().all(|v| self.contains_vector(v, tol))
    }

    /// Basis matrix with the subspace basis as columns (d × dim).
    pub fn basis_matrix(&self) -> ComplexMatrix {
        assert!(!self.basis.is_empty(), "zero subspace has no basis matrix");
        ComplexMatrix::from_columns(&self.basis).expect("validated at construction")
    }
}

/// Modified Gram–Schmidt with a reorthogonalization pass. Vectors whose
/// residual after projection onto the running basis has norm ≤ tol are
/// dropped defensively rather than normalized into noise.
pub fn orthonormalize(vectors: &[StateVector], tol: f64) -> Result<Subspace> {
    if vectors.is_empty() {
        return Err(Error::EmptyInput("orthonormalize"));
    }
    if tol <= 0.0 {
        return Err(Error::BadTolerance(tol));
    }
    let ambient = vectors[0].dim();
    for v in vectors {
        if v.dim() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: v.dim(),
            });
        }
    }
    let mut basis: Vec<StateVector> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for pass in 0..2 {
            for b in &basis {
                r = r.sub(&b.scale(b.inner(&r)));
            }
            if pass == 0 && r.norm() <= tol {
                break;
            }
        }
        if r.norm() > tol {
            basis.push(r.normalized());
        }
    }
    Ok(Subspace {
        ambient_dim: ambient,
        basis,
        tol,
    })
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    tol: f64,
    basis: Vec<StateVector>,
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceRepr {
            ambient_dim: self.ambient_dim,
            tol: self.tol,
            basis: self.basis.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SubspaceRepr::deserialize(deserializer)?;
        Subspace::new(repr.ambient_dim, repr.basis, repr.tol).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_state;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parallel_vectors_collapse() {
        let v1 = StateVector::from_real(&[1.0, 0.0]);
        let v2 = StateVector::from_real(&[2.0, 0.0]);
        let s = orthonormalize(&[v1, v2], 1e-9).unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn independent_vectors_kept() {
        let v1 = StateVector::from_real(&[1.0, 0.0]);
        let v2 = StateVector::from_real(&[0.0, 1.0]);
        let s = orthonormalize(&[v1, v2], 1e-9).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn five_random_vectors_in_c3_span_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let vs: Vec<StateVector> = (0..5).map(|_| random_state(3, &mut rng)).collect();
        // oracle: rank of the stacked matrix
        let stacked = ComplexMatrix::from_columns(&vs).unwrap();
        let rank = stacked.rank_tol(1e-8).unwrap();
        let s = orthonormalize(&vs, 1e-9).unwrap();
        assert_eq!(s.dim(), rank);
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn span_is_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let vs: Vec<StateVector> = (0..4).map(|_| random_state(6, &mut rng)).collect();
        let s = orthonormalize(&vs, 1e-9).unwrap();
        for v in &vs {
            assert!(s.residual_norm(v) < 1e-9 * v.norm().max(1.0));
        }
        assert!(s.gram_residual() < 1e-12);
    }
}
