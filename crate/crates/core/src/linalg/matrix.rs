//! Dense complex matrices in row-major order.
//!
//! Everything downstream (operator spaces, channels, decompositions) is
//! built on this type. Entries are `num_complex::Complex64`; matrices are
//! immutable after construction apart from the explicit `set` accessor used
//! by builders.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::vector::StateVector;
use crate::MAX_DIM;

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadShape {
                rows,
                cols,
                len: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Real matrix entry shorthand used all over the builders.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &StateVector) -> StateVector {
        assert_eq!(self.cols, v.dim(), "mul_vec shape mismatch");
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            for j in 0..self.cols {
                *slot += self.data[i * self.cols + j] * v.amplitudes()[j];
            }
        }
        StateVector::from_amplitudes(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Conjugate transpose A†.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product. Errors when the result would exceed [`MAX_DIM`].
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let rows = self.rows.checked_mul(other.rows).unwrap_or(usize::MAX);
        let cols = self.cols.checked_mul(other.cols).unwrap_or(usize::MAX);
        if rows > MAX_DIM || cols > MAX_DIM {
            return Err(Error::TooLarge {
                dim: rows.max(cols),
                max: MAX_DIM,
            });
        }
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Hilbert–Schmidt inner product ⟨A,B⟩ = Tr(A†B).
    pub fn hs_inner(&self, other: &Self) -> Complex64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.sub(&self.dagger()).frobenius_norm()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_residual() <= tol
    }

    /// ‖A†A − 𝟙‖_F, zero for a unitary.
    pub fn unitarity_residual(&self) -> f64 {
        self.dagger()
            .matmul(self)
            .sub(&Self::identity(self.cols))
            .frobenius_norm()
    }

    pub fn column(&self, j: usize) -> StateVector {
        StateVector::from_amplitudes((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn from_columns(columns: &[StateVector]) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::EmptyInput("from_columns"));
        }
        let rows = columns[0].dim();
        for c in columns {
            if c.dim() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    got: c.dim(),
                });
            }
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| {
            columns[j].amplitudes()[i]
        }))
    }

    /// Eigendecomposition of a Hermitian matrix: returns ascending real
    /// eigenvalues and the matrix whose columns are the eigenvectors.
    pub fn eigh(&self, tol: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let res = self.hermiticity_residual();
        if res > tol {
            return Err(Error::NotHermitian { residual: res });
        }
        // symmetrize before handing off so roundoff cannot leak in
        let h = self.add(&self.dagger()).scale(Complex64::new(0.5, 0.0));
        let eig = nalgebra::linalg::SymmetricEigen::new(h.to_nalgebra());
        let n = self.rows;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
        Ok((values, vectors))
    }

    /// Thin SVD: A = U diag(s) V†, singular values descending.
    ///
    /// Computed from the Hermitian dilation [[0, A], [A†, 0]], whose positive
    /// eigenvalues are the singular values with stacked (u, v) eigenvectors.
    /// This keeps small singular values at absolute (not squared) accuracy
    /// and sidesteps convergence trouble on rank-deficient complex input.
    pub fn svd(&self) -> (ComplexMatrix, Vec<f64>, ComplexMatrix) {
        let (m, n) = (self.rows, self.cols);
        let k = m.min(n);
        let dim = m + n;
        let mut h = ComplexMatrix::zeros(dim, dim);
        for i in 0..m {
            for j in 0..n {
                h.set(i, m + j, self.get(i, j));
                h.set(m + j, i, self.get(i, j).conj());
            }
        }
        let (vals, vecs) = h.eigh(1e-12).expect("dilation is Hermitian by construction");
        let scale = vals
            .iter()
            .fold(0.0_f64, |acc, &v| acc.max(v.abs()));
        // eigenvalues below the noise floor are treated as exact zeros; their
        // eigenvectors may mix the two null blocks and are not usable
        let cutoff = scale * f64::EPSILON * dim as f64;
        let mut s = Vec::with_capacity(k);
        let mut u_cols: Vec<StateVector> = Vec::with_capacity(k);
        let mut v_cols: Vec<StateVector> = Vec::with_capacity(k);
        for idx in (0..dim).rev() {
            if s.len() == k || vals[idx] <= cutoff {
                break;
            }
            let w = vecs.column(idx);
            let wu = StateVector::from_amplitudes(w.amplitudes()[..m].to_vec());
            let wv = StateVector::from_amplitudes(w.amplitudes()[m..].to_vec());
            if wu.norm() == 0.0 || wv.norm() == 0.0 {
                break;
            }
            s.push(vals[idx]);
            u_cols.push(wu.normalized());
            v_cols.push(wv.normalized());
        }
        pad_orthonormal(&mut u_cols, m, k);
        pad_orthonormal(&mut v_cols, n, k);
        s.resize(k, 0.0);
        let u = ComplexMatrix::from_columns(&u_cols).expect("consistent dims");
        let v_h = ComplexMatrix::from_columns(&v_cols)
            .expect("consistent dims")
            .dagger();
        (u, s, v_h)
    }

    pub fn singular_values(&self) -> Vec<f64> {
        self.svd().1
    }

    /// Numerical rank: singular values above `tol` × (largest singular value).
    pub fn rank_tol(&self, tol: f64) -> Result<usize> {
        if tol <= 0.0 {
            return Err(Error::BadTolerance(tol));
        }
        let s = self.singular_values();
        let max = s.first().copied().unwrap_or(0.0);
        if max == 0.0 {
            return Ok(0);
        }
        Ok(s.iter().filter(|&&x| x > tol * max).count())
    }

    /// e^{itH} for Hermitian H, via eigendecomposition.
    pub fn expi_hermitian(&self, t: f64, tol: f64) -> Result<ComplexMatrix> {
        let (vals, vecs) = self.eigh(tol)?;
        let phases = ComplexMatrix::from_fn(vals.len(), vals.len(), |i, j| {
            if i == j {
                Complex64::from_polar(1.0, t * vals[i])
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Ok(vecs.matmul(&phases).matmul(&vecs.dagger()))
    }

    fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

/// Extends a partial orthonormal set to `want` vectors by greedy
/// Gram–Schmidt against the computational basis: each round keeps the
/// candidate with the largest residual, which is always bounded away from
/// zero while the set is incomplete.
fn pad_orthonormal(cols: &mut Vec<StateVector>, ambient: usize, want: usize) {
    while cols.len() < want {
        let mut best: Option<StateVector> = None;
        let mut best_norm = 0.0;
        for candidate in 0..ambient {
            let mut v = StateVector::basis_state(ambient, candidate);
            for _ in 0..2 {
                for b in cols.iter() {
                    v = v.sub(&b.scale(b.inner(&v)));
                }
            }
            let n = v.norm();
            if n > best_norm {
                best_norm = n;
                best = Some(v);
            }
        }
        let v = best.expect("incomplete set always leaves a residual direction");
        cols.push(v.normalized());
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        ComplexMatrix::new(
            repr.rows,
            repr.cols,
            repr.data
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
        .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_hermitian, random_matrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    #[test]
    fn kron_identity_case() {
        let i2 = ComplexMatrix::identity(2);
        let i4 = i2.kron(&i2).unwrap();
        assert_eq!(i4, ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_diagonal_case() {
        let zz = sigma_z().kron(&sigma_z()).unwrap();
        let expected =
            ComplexMatrix::from_fn(4, 4, |i, j| {
                if i != j {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new([1.0, -1.0, -1.0, 1.0][i], 0.0)
                }
            });
        assert!(zz.sub(&expected).frobenius_norm() < 1e-15);
    }

    #[test]
    fn kron_matches_index_formula() {
        // independent oracle: entry (i*2+k, j*2+l) = A[i,j] * B[k,l]
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_matrix(2, 2, &mut rng);
        let b = random_matrix(2, 2, &mut rng);
        let k = a.kron(&b).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        let want = a.get(i, j) * b.get(p, q);
                        assert!((k.get(i * 2 + p, j * 2 + q) - want).norm() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn kron_rejects_oversized_result() {
        let big = ComplexMatrix::identity(128);
        // the size check fires before any allocation
        assert!(matches!(
            big.kron(&big),
            Err(Error::TooLarge { dim: 16384, .. })
        ));
    }

    #[test]
    fn rank_of_zero_matrix_is_zero() {
        assert_eq!(ComplexMatrix::zeros(3, 3).rank_tol(1e-8).unwrap(), 0);
    }

    #[test]
    fn rank_of_identity() {
        assert_eq!(ComplexMatrix::identity(4).rank_tol(1e-8).unwrap(), 4);
    }

    #[test]
    fn rank_drops_tiny_singular_value() {
        // diag(1, 1e-12) conjugated by random unitaries keeps its spectrum
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let u = crate::random::random_unitary(2, &mut rng);
        let v = crate::random::random_unitary(2, &mut rng);
        let d = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 1e-12]).unwrap();
        let m = u.matmul(&d).matmul(&v);
        assert_eq!(m.rank_tol(1e-8).unwrap(), 1);
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &n in &[2usize, 5, 16, 64] {
            let h = random_hermitian(n, &mut rng);
            let (vals, vecs) = h.eigh(1e-9).unwrap();
            let lambda = ComplexMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    Complex64::new(vals[i], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            let recon = vecs.matmul(&lambda).matmul(&vecs.dagger());
            assert!(recon.sub(&h).frobenius_norm() < 1e-10, "dim {n}");
            assert!(vecs.unitarity_residual() < 1e-10);
        }
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(m.eigh(1e-9), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn svd_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_matrix(6, 4, &mut rng);
        let (u, s, vh) = m.svd();
        let mut recon = ComplexMatrix::zeros(6, 4);
        for k in 0..s.len() {
            for i in 0..6 {
                for j in 0..4 {
                    let add = u.get(i, k) * s[k] * vh.get(k, j);
                    recon.set(i, j, recon.get(i, j) + add);
                }
            }
        }
        assert!(recon.sub(&m).frobenius_norm() < 1e-12);
        assert!(s.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_matrix(3, 2, &mut rng);
        let text = serde_json::to_string(&m).unwrap();
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        assert!(back.sub(&m).frobenius_norm() < 1e-15 * m.frobenius_norm());
    }

    #[test]
    fn json_rejects_bad_shape() {
        let text = r#"{"rows": 2, "cols": 2, "data": [[1.0, 0.0]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(text).is_err());
    }
}
