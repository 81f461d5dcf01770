//! Kraus channels and collective-spin operators.
//!
//! The dephasing channels built here are the full-strength collective
//! phase-damping processes along x, y, z: their Kraus operators are the
//! spectral projectors of the corresponding total-spin component, which is
//! the unique Hermitian idempotent choice compatible with their action on
//! the spin-1/2 doublet.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;

/// Pauli matrices (σ_x, σ_y, σ_z) with |0⟩ the spin-up, +1 eigenstate of σ_z.
pub fn paulis() -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let x = ComplexMatrix::new(2, 2, vec![zero, one, one, zero]).unwrap();
    let y = ComplexMatrix::new(2, 2, vec![zero, -i, i, zero]).unwrap();
    let z = ComplexMatrix::new(2, 2, vec![one, zero, zero, -one]).unwrap();
    (x, y, z)
}

/// A spatial axis label for the collective channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn all() -> [Axis; 3] {
        [Axis::X, Axis::Y, Axis::Z]
    }

    pub fn label(&self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(format!("unknown axis {other:?}")),
        }
    }
}

/// Collective spin components J_u = ½ Σ_i σ_u^(i) for n spin-½ qubits.
pub fn collective_spin_ops(n_qubits: usize) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    assert!(n_qubits >= 1);
    let (sx, sy, sz) = paulis();
    let build = |sigma: &ComplexMatrix| {
        let d = 1usize << n_qubits;
        let mut total = ComplexMatrix::zeros(d, d);
        for site in 0..n_qubits {
            let mut term = ComplexMatrix::identity(1);
            for k in 0..n_qubits {
                let factor = if k == site {
                    sigma.clone()
                } else {
                    ComplexMatrix::identity(2)
                };
                term = term.kron(&factor).expect("within MAX_DIM");
            }
            total = total.add(&term);
        }
        total.scale(Complex64::new(0.5, 0.0))
    };
    (build(&sx), build(&sy), build(&sz))
}

/// A completely positive trace-preserving map given by Kraus operators.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Channel {
    label: String,
    kraus: Vec<ComplexMatrix>,
}

impl Channel {
    /// Validates dimensions and the completeness relation Σ K†K = 𝟙.
    pub fn new(label: impl Into<String>, kraus: Vec<ComplexMatrix>, tol: f64) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::EmptyInput("channel with no Kraus operators"));
        }
        let d = kraus[0].rows();
        for k in &kraus {
            if !k.is_square() || k.rows() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: k.rows(),
                });
            }
        }
        let c = Self {
            label: label.into(),
            kraus,
        };
        let res = c.completeness_residual();
        if res > tol {
            return Err(Error::IncompleteKraus { residual: res });
        }
        Ok(c)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            label: "identity".to_string(),
            kraus: vec![ComplexMatrix::identity(dim)],
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].rows()
    }

    /// ‖Σ K†K − 𝟙‖_F.
    pub fn completeness_residual(&self) -> f64 {
        let d = self.dim();
        let mut sum = ComplexMatrix::zeros(d, d);
        for k in &self.kraus {
            sum = sum.add(&k.dagger().matmul(k));
        }
        sum.sub(&ComplexMatrix::identity(d)).frobenius_norm()
    }

    /// Σ K ϱ K†, with the output validated as a density matrix.
    pub fn apply(&self, rho: &DensityMatrix, tol: f64) -> Result<DensityMatrix> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: rho.dim(),
            });
        }
        let d = self.dim();
        let mut out = ComplexMatrix::zeros(d, d);
        for k in &self.kraus {
            out = out.add(&k.matmul(rho.matrix()).matmul(&k.dagger()));
        }
        DensityMatrix::new(out, tol)
    }
}

/// Cascade: `second` applied after `first`; the Kraus set is all products
/// {V_b U_a}, kept unpruned.
pub fn compose(second: &Channel, first: &Channel, tol: f64) -> Result<Channel> {
    if second.dim() != first.dim() {
        return Err(Error::DimensionMismatch {
            expected: first.dim(),
            got: second.dim(),
        });
    }
    let mut kraus = Vec::with_capacity(second.kraus.len() * first.kraus.len());
    for v in &second.kraus {
        for u in &first.kraus {
            kraus.push(v.matmul(u));
        }
    }
    Channel::new(format!("{}∘{}", second.label, first.label), kraus, tol)
}

/// Full-strength collective phase damping along `axis`: one Kraus projector
/// per distinct eigenvalue of J_axis, ordered by descending |eigenvalue|,
/// ties broken by descending eigenvalue. For three qubits the order is
/// +3/2, −3/2, +1/2, −1/2.
pub fn collective_dephasing(axis: Axis, n_qubits: usize) -> Channel {
    let (jx, jy, jz) = collective_spin_ops(n_qubits);
    let j = match axis {
        Axis::X => jx,
        Axis::Y => jy,
        Axis::Z => jz,
    };
    let (vals, vecs) = j.eigh(1e-9).expect("J_u is Hermitian");
    let d = j.rows();
    // group eigenvalues into distinct clusters
    let mut clusters: Vec<(f64, Vec<usize>)> = Vec::new();
    for (i, &v) in vals.iter().enumerate() {
        match clusters.iter_mut().find(|(c, _)| (*c - v).abs() < 1e-9) {
            Some((_, idxs)) => idxs.push(i),
            None => clusters.push((v, vec![i])),
        }
    }
    clusters.sort_by(|a, b| {
        b.0.abs()
            .total_cmp(&a.0.abs())
            .then(b.0.total_cmp(&a.0))
    });
    let kraus: Vec<ComplexMatrix> = clusters
        .iter()
        .map(|(_, idxs)| {
            let mut p = ComplexMatrix::zeros(d, d);
            for &i in idxs {
                let col = vecs.column(i);
                for r in 0..d {
                    for c in 0..d {
                        let add = col.amplitudes()[r] * col.amplitudes()[c].conj();
                        p.set(r, c, p.get(r, c) + add);
                    }
                }
            }
            p
        })
        .collect();
    Channel::new(format!("E_{}", axis.label()), kraus, 1e-9)
        .expect("spectral projectors are complete")
}

/// Density matrix with validated invariants.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Requires Hermiticity, unit trace and eigenvalues ≥ −tol.
    pub fn new(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let herm = matrix.hermiticity_residual();
        if herm > tol {
            return Err(Error::BadDensityMatrix(format!(
                "hermiticity residual {herm:.3e}"
            )));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::BadDensityMatrix(format!("trace {tr}")));
        }
        let (vals, _) = matrix.eigh(tol)?;
        if let Some(&min) = vals.first() {
            if min < -tol {
                return Err(Error::BadDensityMatrix(format!(
                    "negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(Self { matrix })
    }

    /// |ψ⟩⟨ψ| for a normalized vector.
    pub fn pure(state: &crate::linalg::vector::StateVector, tol: f64) -> Result<Self> {
        let d = state.dim();
        let m = ComplexMatrix::from_fn(d, d, |i, j| {
            state.amplitudes()[i] * state.amplitudes()[j].conj()
        });
        Self::new(m, tol)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Tr(ϱ²).
    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).trace().re
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector::StateVector;
    use crate::opspace::{verify_algebra, OperatorSpace};
    use crate::random::random_density;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_qubit_jz_is_half_sigma_z() {
        let (_, _, jz) = collective_spin_ops(1);
        let want = ComplexMatrix::from_real(2, 2, &[0.5, 0.0, 0.0, -0.5]).unwrap();
        assert!(jz.sub(&want).frobenius_norm() < 1e-15);
    }

    #[test]
    fn three_qubit_jz_spectrum() {
        let (_, _, jz) = collective_spin_ops(3);
        let (vals, _) = jz.eigh(1e-9).unwrap();
        let expected = [-1.5, -0.5, -0.5, -0.5, 0.5, 0.5, 0.5, 1.5];
        for (got, want) in vals.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn three_qubit_total_spin_sectors() {
        let (jx, jy, jz) = collective_spin_ops(3);
        let j2 = jx
            .matmul(&jx)
            .add(&jy.matmul(&jy))
            .add(&jz.matmul(&jz));
        let (vals, _) = j2.eigh(1e-9).unwrap();
        let low = vals.iter().filter(|&&v| (v - 0.75).abs() < 1e-9).count();
        let high = vals.iter().filter(|&&v| (v - 3.75).abs() < 1e-9).count();
        assert_eq!((low, high), (4, 4));
    }

    #[test]
    fn dephasing_kraus_are_complete_orthogonal_projectors() {
        for axis in Axis::all() {
            let c = collective_dephasing(axis, 3);
            assert_eq!(c.kraus().len(), 4);
            assert!(c.completeness_residual() < 1e-12);
            for (a, ka) in c.kraus().iter().enumerate() {
                assert!(ka.hermiticity_residual() < 1e-12);
                for (b, kb) in c.kraus().iter().enumerate() {
                    let prod = ka.matmul(kb);
                    let want = if a == b {
                        ka.clone()
                    } else {
                        ComplexMatrix::zeros(8, 8)
                    };
                    assert!(prod.sub(&want).frobenius_norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn dephasing_span_is_abelian_algebra_with_identity() {
        for axis in Axis::all() {
            let c = collective_dephasing(axis, 3);
            let space = OperatorSpace::span_of(c.kraus(), 1e-9).unwrap();
            assert_eq!(space.dim(), 4);
            let flags = verify_algebra(&space);
            assert!(flags.all(), "axis {axis:?}");
        }
    }

    #[test]
    fn identity_channel_fixes_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let rho = DensityMatrix::new(random_density(4, &mut rng), 1e-9).unwrap();
        let out = Channel::identity(4).apply(&rho, 1e-9).unwrap();
        assert!(out.matrix().sub(rho.matrix()).frobenius_norm() < 1e-14);
    }

    #[test]
    fn full_dephasing_kills_coherence() {
        // single-qubit |+⟩⟨+| dephased along z becomes maximally mixed
        let p0 = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let p1 = ComplexMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, 1.0]).unwrap();
        let c = Channel::new("E_z(1)", vec![p0, p1], 1e-12).unwrap();
        let s = 1.0 / 2.0_f64.sqrt();
        let plus = StateVector::from_real(&[s, s]);
        let rho = DensityMatrix::pure(&plus, 1e-9).unwrap();
        let out = c.apply(&rho, 1e-9).unwrap();
        let want = ComplexMatrix::from_real(2, 2, &[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(out.matrix().sub(&want).frobenius_norm() < 1e-12);
    }

    #[test]
    fn composition_order_matters_for_xy() {
        let ex = collective_dephasing(Axis::X, 3);
        let ey = collective_dephasing(Axis::Y, 3);
        let exy = compose(&ex, &ey, 1e-9).unwrap();
        let eyx = compose(&ey, &ex, 1e-9).unwrap();
        assert_eq!(exy.kraus().len(), 16);
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let rho = DensityMatrix::new(random_density(8, &mut rng), 1e-9).unwrap();
        let a = exy.apply(&rho, 1e-9).unwrap();
        let b = eyx.apply(&rho, 1e-9).unwrap();
        assert!(a.matrix().sub(b.matrix()).frobenius_norm() > 1e-3);
    }

    #[test]
    fn conjugate_composites_share_kraus_sets_up_to_adjoint() {
        let ex = collective_dephasing(Axis::X, 3);
        let ey = collective_dephasing(Axis::Y, 3);
        let exy = compose(&ex, &ey, 1e-9).unwrap();
        let eyx = compose(&ey, &ex, 1e-9).unwrap();
        // {K^x K^y} = {(K^y K^x)†} element-wise since the K are Hermitian
        for k in exy.kraus() {
            let target = k.dagger();
            let found = eyx
                .kraus()
                .iter()
                .any(|m| m.sub(&target).frobenius_norm() < 1e-12);
            assert!(found);
        }
    }

    #[test]
    fn trace_preserved_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for axis in Axis::all() {
            let c = collective_dephasing(axis, 3);
            for _ in 0..5 {
                let rho = DensityMatrix::new(random_density(8, &mut rng), 1e-9).unwrap();
                let out = c.apply(&rho, 1e-9).unwrap();
                assert!((out.trace().re - 1.0).abs() < 1e-10);
            }
        }
    }
}
