//! Operator spaces under the Hilbert–Schmidt inner product.
//!
//! An [`OperatorSpace`] is a linearly closed set of d×d operators held as an
//! HS-orthonormal basis. On top of spans this module provides containment,
//! products of spans, multiplicative/†-closure into an [`ErrorAlgebra`],
//! commutants and centers. Operators are vectorized column-major internally;
//! the convention is never observable.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::vector::StateVector;

/// Column-major vectorization of a square matrix.
fn vectorize(m: &ComplexMatrix) -> StateVector {
    let d = m.rows();
    let mut amps = Vec::with_capacity(d * d);
    for j in 0..d {
        for i in 0..d {
            amps.push(m.get(i, j));
        }
    }
    StateVector::new(amps).expect("entries already validated")
}

fn unvectorize(v: &StateVector, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| v.amplitudes()[j * d + i])
}

/// Linearly closed operator set with an HS-orthonormal basis.
#[derive(Debug, Clone)]
pub struct OperatorSpace {
    ambient_dim: usize,
    basis: Vec<ComplexMatrix>,
    tol: f64,
}

impl OperatorSpace {
    /// HS-orthonormal basis of span{ops}.
    ///
    /// Rank-revealing pivoted Gram–Schmidt: at every round the candidate
    /// with the largest remaining residual joins the basis, and the sweep
    /// stops once the largest residual drops below tol × (largest input
    /// norm). Numerically-zero inputs (for instance vanishing products of
    /// projectors) can therefore never inject noise directions.
    pub fn span_of(ops: &[ComplexMatrix], tol: f64) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::EmptyInput("span_of"));
        }
        if tol <= 0.0 {
            return Err(Error::BadTolerance(tol));
        }
        let d = ops[0].rows();
        for m in ops {
            if !m.is_square() {
                return Err(Error::NotSquare {
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
            if m.rows() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: m.rows(),
                });
            }
        }
        let mut residuals: Vec<StateVector> = ops.iter().map(vectorize).collect();
        let scale = residuals
            .iter()
            .map(|v| v.norm())
            .fold(0.0_f64, f64::max);
        let mut basis_vecs: Vec<StateVector> = Vec::new();
        if scale > 0.0 {
            let threshold = tol * scale;
            while basis_vecs.len() < d * d {
                let (idx, best) = residuals
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (i, v.norm()))
                    .max_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("nonempty inputs");
                if best <= threshold {
                    break;
                }
                // reorthogonalize the pivot once against the running basis
                let mut b = residuals[idx].clone();
                for prev in &basis_vecs {
                    b = b.sub(&prev.scale(prev.inner(&b)));
                }
                let b = b.normalized();
                for r in residuals.iter_mut() {
                    *r = r.sub(&b.scale(b.inner(r)));
                }
                basis_vecs.push(b);
            }
        }
        let basis = basis_vecs.iter().map(|v| unvectorize(v, d)).collect();
        Ok(Self {
            ambient_dim: d,
            basis,
            tol,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Deviation of the HS Gram matrix from the identity.
    pub fn gram_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.hs_inner(b) - Complex64::new(want, 0.0)).norm());
            }
        }
        worst
    }

    /// Orthogonal projection of `op` onto the space.
    pub fn project(&self, op: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.ambient_dim, self.ambient_dim);
        for b in &self.basis {
            out = out.add(&b.scale(b.hs_inner(op)));
        }
        out
    }

    /// HS norm of the component of `op` outside the space.
    pub fn residual_norm(&self, op: &ComplexMatrix) -> f64 {
        op.sub(&self.project(op)).frobenius_norm()
    }

    /// True iff `op` lies in the space within `tol` (relative to its norm).
    pub fn contains_op(&self, op: &ComplexMatrix, tol: f64) -> bool {
        self.residual_norm(op) <= tol * op.frobenius_norm().max(1.0)
    }

    /// True iff every basis element of `inner` lies in `self` within `tol`.
    pub fn contains(&self, inner: &OperatorSpace, tol: f64) -> bool {
        self.ambient_dim == inner.ambient_dim
            && inner.basis.iter().all(|b| self.contains_op(b, tol))
    }

    /// span{A·B : A ∈ self, B ∈ other}.
    pub fn product_span(&self, other: &OperatorSpace) -> Result<OperatorSpace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut prods = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.basis {
            for b in &other.basis {
                prods.push(a.matmul(b));
            }
        }
        if prods.is_empty() {
            return Ok(OperatorSpace {
                ambient_dim: self.ambient_dim,
                basis: Vec::new(),
                tol: self.tol,
            });
        }
        OperatorSpace::span_of(&prods, self.tol)
    }

    /// span of self ∪ other.
    pub fn union_span(&self, other: &OperatorSpace) -> Result<OperatorSpace> {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        OperatorSpace::span_of(&all, self.tol)
    }

    /// span{A† : A ∈ self}.
    pub fn dagger_span(&self) -> OperatorSpace {
        OperatorSpace {
            ambient_dim: self.ambient_dim,
            basis: self.basis.iter().map(|b| b.dagger()).collect(),
            tol: self.tol,
        }
    }
}

/// The three defining algebra properties, checked numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFlags {
    pub contains_identity: bool,
    pub dagger_closed: bool,
    pub mult_closed: bool,
}

impl AlgebraFlags {
    pub fn all(&self) -> bool {
        self.contains_identity && self.dagger_closed && self.mult_closed
    }
}

/// Checks identity membership, †-closure and multiplicative closure.
pub fn verify_algebra(space: &OperatorSpace) -> AlgebraFlags {
    let tol = space.tol();
    let d = space.ambient_dim();
    if space.dim() == d * d {
        // the only d²-dimensional subspace is the full matrix algebra
        return AlgebraFlags {
            contains_identity: true,
            dagger_closed: true,
            mult_closed: true,
        };
    }
    let identity = ComplexMatrix::identity(d);
    let contains_identity = space.contains_op(&identity, tol);
    let dagger_closed = space.contains(&space.dagger_span(), tol);
    let mut mult_closed = true;
    'outer: for a in space.basis() {
        for b in space.basis() {
            if !space.contains_op(&a.matmul(b), tol) {
                mult_closed = false;
                break 'outer;
            }
        }
    }
    AlgebraFlags {
        contains_identity,
        dagger_closed,
        mult_closed,
    }
}

/// A †-closed, multiplicatively closed operator space containing 𝟙.
#[derive(Debug, Clone)]
pub struct ErrorAlgebra {
    space: OperatorSpace,
    flags: AlgebraFlags,
}

impl ErrorAlgebra {
    /// Validates the three flags on an existing space.
    pub fn try_from_space(space: OperatorSpace) -> Result<Self> {
        let flags = verify_algebra(&space);
        if !flags.contains_identity {
            return Err(Error::NotAnAlgebra("identity not contained"));
        }
        if !flags.dagger_closed {
            return Err(Error::NotAnAlgebra("not closed under adjoints"));
        }
        if !flags.mult_closed {
            return Err(Error::NotAnAlgebra("not closed under multiplication"));
        }
        Ok(Self { space, flags })
    }

    pub fn space(&self) -> &OperatorSpace {
        &self.space
    }

    pub fn flags(&self) -> AlgebraFlags {
        self.flags
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.ambient_dim()
    }
}

/// Smallest †-closed, multiplicatively closed space containing `gen`
/// (and 𝟙 when requested): iterate S ← span(S ∪ S† ∪ S·S) to the fixed
/// point. Dimension strictly increases each round, so ambient² rounds
/// bound the loop.
pub fn algebra_closure(gen: &OperatorSpace, include_identity: bool) -> Result<ErrorAlgebra> {
    let d = gen.ambient_dim();
    let mut current = if include_identity {
        let mut ops = gen.basis().to_vec();
        ops.push(ComplexMatrix::identity(d));
        OperatorSpace::span_of(&ops, gen.tol())?
    } else {
        gen.clone()
    };
    if current.dim() == 0 {
        return Err(Error::EmptyInput("algebra_closure of the zero space"));
    }
    for _ in 0..d * d {
        if current.dim() == d * d {
            return ErrorAlgebra::try_from_space(current);
        }
        let products = current.product_span(&current)?;
        let daggers = current.dagger_span();
        let next = current.union_span(&products)?.union_span(&daggers)?;
        if next.dim() == current.dim() {
            return ErrorAlgebra::try_from_space(next);
        }
        current = next;
    }
    Err(Error::NotAnAlgebra("closure iteration did not stabilize"))
}

/// Commutant {X : [B, X] = 0 ∀ B}: joint nullspace of X ↦ BX − XB over the
/// basis, computed from the d²×d² positive semidefinite normal operator
/// H = Σ_B L_B†L_B, assembled through its Kronecker expansion
/// 𝟙⊗(ΣB†B) + (ΣB̄Bᵀ)⊗𝟙 − Σ(Bᵀ⊗B† + B̄⊗B).
pub fn commutant(a: &OperatorSpace) -> OperatorSpace {
    let d = a.ambient_dim();
    let identity = ComplexMatrix::identity(d);
    let mut left = ComplexMatrix::zeros(d, d);
    let mut right = ComplexMatrix::zeros(d, d);
    let mut cross = ComplexMatrix::zeros(d * d, d * d);
    for b in a.basis() {
        left = left.add(&b.dagger().matmul(b));
        right = right.add(&b.conj().matmul(&b.transpose()));
        cross = cross
            .add(&b.transpose().kron(&b.dagger()).expect("within MAX_DIM"))
            .add(&b.conj().kron(b).expect("within MAX_DIM"));
    }
    let h = identity
        .kron(&left)
        .expect("within MAX_DIM")
        .add(&right.kron(&identity).expect("within MAX_DIM"))
        .sub(&cross);
    let (vals, vecs) = h.eigh(1e-8).expect("normal operator is Hermitian");
    // scale-aware nullspace threshold
    let scale = vals.last().copied().unwrap_or(0.0).max(1.0);
    let mut mats = Vec::new();
    for (i, &v) in vals.iter().enumerate() {
        if v <= 1e-10 * scale {
            mats.push(unvectorize(&vecs.column(i), d));
        }
    }
    OperatorSpace::span_of(&mats, a.tol()).expect("identity always commutes")
}

/// Center Z(A) = A ∩ A′ via the nullspace of (P_A⊥ + P_A′⊥) on vec space.
pub fn center(a: &OperatorSpace) -> OperatorSpace {
    let ap = commutant(a);
    intersect(a, &ap)
}

/// Intersection of two operator spaces through their vectorized projectors.
pub fn intersect(a: &OperatorSpace, b: &OperatorSpace) -> OperatorSpace {
    let d = a.ambient_dim();
    assert_eq!(d, b.ambient_dim());
    let n = d * d;
    let mut gap = ComplexMatrix::identity(n).scale(Complex64::new(2.0, 0.0));
    for space in [a, b] {
        for m in space.basis() {
            let v = vectorize(m);
            for i in 0..n {
                for j in 0..n {
                    let sub = v.amplitudes()[i] * v.amplitudes()[j].conj();
                    gap.set(i, j, gap.get(i, j) - sub);
                }
            }
        }
    }
    let (vals, vecs) = gap.eigh(1e-8).expect("projector sum is Hermitian");
    let mut mats = Vec::new();
    for (i, &v) in vals.iter().enumerate() {
        if v <= 1e-9 {
            mats.push(unvectorize(&vecs.column(i), d));
        }
    }
    if mats.is_empty() {
        return OperatorSpace {
            ambient_dim: d,
            basis: Vec::new(),
            tol: a.tol(),
        };
    }
    OperatorSpace::span_of(&mats, a.tol()).expect("nonempty")
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    ambient_dim: usize,
    tol: f64,
    basis: Vec<ComplexMatrix>,
}

impl Serialize for OperatorSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SpaceRepr {
            ambient_dim: self.ambient_dim,
            tol: self.tol,
            basis: self.basis.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OperatorSpace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SpaceRepr::deserialize(deserializer)?;
        if repr.basis.is_empty() {
            return Ok(OperatorSpace {
                ambient_dim: repr.ambient_dim,
                basis: Vec::new(),
                tol: repr.tol,
            });
        }
        let space = OperatorSpace::span_of(&repr.basis, repr.tol).map_err(D::Error::custom)?;
        if space.ambient_dim() != repr.ambient_dim {
            return Err(D::Error::custom("ambient_dim does not match basis"));
        }
        Ok(space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::paulis;

    fn pauli_ops() -> (ComplexMatrix, ComplexMatrix, ComplexMatrix, ComplexMatrix) {
        let (x, y, z) = paulis();
        (ComplexMatrix::identity(2), x, y, z)
    }

    #[test]
    fn span_collapses_scalar_multiples() {
        let i = ComplexMatrix::identity(2);
        let s = OperatorSpace::span_of(&[i.clone(), i.scale(Complex64::new(2.0, 0.0))], 1e-9)
            .unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn pauli_span_is_full_matrix_space() {
        let (i, x, y, z) = pauli_ops();
        let s = OperatorSpace::span_of(&[i, x, y, z], 1e-9).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(s.gram_residual() < 1e-12);
    }

    #[test]
    fn containment_basics() {
        let (i, x, _, z) = pauli_ops();
        let small = OperatorSpace::span_of(&[i.clone()], 1e-9).unwrap();
        let big = OperatorSpace::span_of(&[i, z], 1e-9).unwrap();
        assert!(big.contains(&small, 1e-9));
        assert!(!small.contains(&big, 1e-9));
        assert!(big.contains(&big, 1e-9));
        let other = OperatorSpace::span_of(&[x], 1e-9).unwrap();
        assert!(!big.contains(&other, 1e-9));
    }

    #[test]
    fn product_span_examples() {
        let (i, x, _, _) = pauli_ops();
        let si = OperatorSpace::span_of(&[i], 1e-9).unwrap();
        let sx = OperatorSpace::span_of(&[x.clone()], 1e-9).unwrap();
        let p = si.product_span(&sx).unwrap();
        assert_eq!(p.dim(), 1);
        assert!(p.contains_op(&x, 1e-9));

        // orthogonal diagonal projectors reproduce themselves
        let p0 = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let p1 = ComplexMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, 1.0]).unwrap();
        let diag = OperatorSpace::span_of(&[p0, p1], 1e-9).unwrap();
        let dd = diag.product_span(&diag).unwrap();
        assert_eq!(dd.dim(), 2);
        assert!(diag.contains(&dd, 1e-9) && dd.contains(&diag, 1e-9));
    }

    #[test]
    fn closure_of_sigma_z_is_diagonal_algebra() {
        let (_, _, _, z) = pauli_ops();
        let gen = OperatorSpace::span_of(&[z], 1e-9).unwrap();
        let alg = algebra_closure(&gen, true).unwrap();
        assert_eq!(alg.dim(), 2);
        assert!(alg.flags().all());
    }

    #[test]
    fn closure_of_x_and_z_is_full_algebra() {
        let (_, x, _, z) = pauli_ops();
        let gen = OperatorSpace::span_of(&[x, z], 1e-9).unwrap();
        let alg = algebra_closure(&gen, true).unwrap();
        assert_eq!(alg.dim(), 4);
    }

    #[test]
    fn commutant_of_full_algebra_is_scalars() {
        let (i, x, y, z) = pauli_ops();
        let full = OperatorSpace::span_of(&[i, x, y, z], 1e-9).unwrap();
        let c = commutant(&full);
        assert_eq!(c.dim(), 1);
        assert!(c.contains_op(&ComplexMatrix::identity(2), 1e-9));
    }

    #[test]
    fn commutant_of_scalars_is_everything() {
        let scalars = OperatorSpace::span_of(&[ComplexMatrix::identity(3)], 1e-9).unwrap();
        let c = commutant(&scalars);
        assert_eq!(c.dim(), 9);
    }

    #[test]
    fn verify_algebra_flags() {
        let (i, x, y, z) = pauli_ops();
        let full = OperatorSpace::span_of(&[i, x.clone(), y, z], 1e-9).unwrap();
        let f = verify_algebra(&full);
        assert!(f.contains_identity && f.dagger_closed && f.mult_closed);

        let only_x = OperatorSpace::span_of(&[x], 1e-9).unwrap();
        let f = verify_algebra(&only_x);
        assert!(!f.contains_identity);
        assert!(f.dagger_closed);
        assert!(!f.mult_closed);
    }

    #[test]
    fn closure_is_idempotent() {
        let (_, x, _, z) = pauli_ops();
        let gen = OperatorSpace::span_of(&[x, z], 1e-9).unwrap();
        let alg = algebra_closure(&gen, true).unwrap();
        let again = algebra_closure(alg.space(), false).unwrap();
        assert_eq!(alg.dim(), again.dim());
        assert!(alg.space().contains(again.space(), 1e-9));
    }
}
