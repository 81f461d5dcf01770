//! Operator-algebraic verification of quantum noiseless subsystems.
//!
//! This crate represents error sets, error algebras and error-correcting
//! subsystems as dense complex matrices and implements the machinery needed
//! to certify noiseless behavior of an implemented decoding:
//!
//! - [`linalg`] — complex matrices, subspaces, SVD-based factorization;
//! - [`opspace`] — operator spaces under the Hilbert–Schmidt inner product,
//!   algebra closure, commutants and centers;
//! - [`decomp`] — reduction of a †-closed matrix algebra into irreducible
//!   blocks 𝟙 ⊗ Mat, with explicit isometries;
//! - [`channels`] — Kraus channels, collective spin operators and the
//!   full-strength collective dephasing channels;
//! - [`verify`] — decode-stability checks, syndrome extraction, reachable
//!   syndrome spaces, DFS/NS classification, a brute-force theorem oracle
//!   and error-set enlargement;
//! - [`spin`] — the three-qubit collective-noise system with end-to-end
//!   verification scenarios.
//!
//! All values are immutable after construction; every operation is a pure
//! function, so callers are free to evaluate independent checks in parallel.

pub mod channels;
pub mod decomp;
pub mod error;
pub mod linalg;
pub mod opspace;
pub mod random;
pub mod spin;
pub mod verify;

pub use channels::{collective_dephasing, collective_spin_ops, compose, Axis, Channel, DensityMatrix};
pub use decomp::{decompose, identity_tensor_test, tilde_conjugate, SubsystemBlock, SubsystemDecomposition};
pub use error::{Error, Result};
pub use linalg::{factor_product, orthonormalize, ComplexMatrix, Factorization, StateVector, Subspace};
pub use opspace::{algebra_closure, center, commutant, verify_algebra, AlgebraFlags, ErrorAlgebra, OperatorSpace};
pub use verify::{
    classify, enlarge_error_set, leakage_check, purity_check, reachable_space, reference_syndrome,
    theorem_oracle, verify_stability, Classification, CodeSpec, DecodingMap, Enlargement,
    OracleOutcome, RecordStatus, StabilityReport, SyndromeRecord, Tolerances, VerificationReport,
};

/// Default absolute tolerance for equality checks.
pub const DEFAULT_ATOL: f64 = 1e-9;

/// Default relative threshold for numerical rank decisions.
pub const DEFAULT_RANK_RTOL: f64 = 1e-8;

/// Hard cap on any matrix dimension produced by tensor products.
pub const MAX_DIM: usize = 4096;
