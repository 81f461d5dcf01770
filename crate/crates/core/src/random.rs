//! Seeded random draws of states, matrices and unitaries.
//!
//! The decomposition routine probes algebras with generic Hermitian
//! elements; everything here is deterministic given the RNG state.

use num_complex::Complex64;
use rand::Rng;

use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::vector::StateVector;

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    // Box–Muller; plain uniforms would do for genericity but normals keep
    // the unitary draws unbiased.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (-2.0 * u1.ln()).sqrt();
    Complex64::new(r * u2.cos(), r * u2.sin())
}

pub fn random_state(dim: usize, rng: &mut impl Rng) -> StateVector {
    StateVector::new((0..dim).map(|_| gaussian(rng)).collect()).expect("finite draws")
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::new(rows, cols, (0..rows * cols).map(|_| gaussian(rng)).collect())
        .expect("finite draws")
}

pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let m = random_matrix(dim, dim, rng);
    m.add(&m.dagger()).scale(Complex64::new(0.5, 0.0))
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the standard
/// phase correction on the diagonal of R.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = random_matrix(dim, dim, rng);
    let qr = nalgebra::linalg::QR::new(nalgebra::DMatrix::from_fn(dim, dim, |i, j| g.get(i, j)));
    let q = qr.q();
    let r = qr.r();
    ComplexMatrix::from_fn(dim, dim, |i, j| {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        q[(i, j)] * phase.conj()
    })
}

/// Random Hermitian element of the span of `basis` (which must be a
/// †-closed space for the result to stay inside it).
pub fn random_hermitian_in_span(basis: &[ComplexMatrix], rng: &mut impl Rng) -> ComplexMatrix {
    assert!(!basis.is_empty());
    let d = basis[0].rows();
    let mut m = ComplexMatrix::zeros(d, d);
    for b in basis {
        m = m.add(&b.scale(gaussian(rng)));
    }
    m.add(&m.dagger()).scale(Complex64::new(0.5, 0.0))
}

/// Random density matrix: normalized G G† for a Ginibre draw.
pub fn random_density(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = random_matrix(dim, dim, rng);
    let p = g.matmul(&g.dagger());
    let tr = p.trace().re;
    p.scale(Complex64::new(1.0 / tr, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for &n in &[2usize, 3, 8] {
            let u = random_unitary(n, &mut rng);
            assert!(u.unitarity_residual() < 1e-12, "dim {n}");
        }
    }

    #[test]
    fn random_density_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rho = random_density(4, &mut rng);
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
        assert!(rho.hermiticity_residual() < 1e-12);
        let (vals, _) = rho.eigh(1e-9).unwrap();
        assert!(vals.iter().all(|&x| x > -1e-12));
    }
}
