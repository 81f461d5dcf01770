//! Decode-stability verification, syndrome spaces and classification.
//!
//! Given an implemented decoding unitary U_d : S → Q ⊗ Y ⊕ R and an encoder
//! into the code, this module checks that every error in a linear set acts
//! as identity ⊗ (syndrome shift) on decoded states, extracts the syndrome
//! vector attached to each error, computes the space of syndrome states
//! reachable from the reference, classifies the protected subsystem as a
//! DFS / conditional NS / full NS, brute-forces the restriction theorem and
//! enlarges verified error sets through admissible products.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::factor::{factor_product, Factorization};
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::subspace::{orthonormalize, Subspace};
use crate::linalg::vector::StateVector;
use crate::opspace::{ErrorAlgebra, OperatorSpace};

/// Report schema identifier written into every serialized report.
pub const REPORT_SCHEMA: &str = "nsverify-report-1";

/// Tolerances threaded through a verification run.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute tolerance for equality of states and amplitudes.
    pub atol: f64,
    /// Pass/fail threshold on the per-error fidelity deficit.
    pub deficit_threshold: f64,
    /// Relative threshold for numerical rank decisions.
    pub rank_rtol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            atol: crate::DEFAULT_ATOL,
            deficit_threshold: 1e-8,
            rank_rtol: crate::DEFAULT_RANK_RTOL,
        }
    }
}

impl Tolerances {
    pub fn with_atol(atol: f64) -> Self {
        Self {
            atol,
            ..Self::default()
        }
    }
}

/// The implemented decoding transformation U_d : S → Q ⊗ Y ⊕ R.
///
/// The output space is ordered Q-major as 𝒬 ⊗ 𝒴 ⊗ (remaining ancillae);
/// the Q ⊗ Y embedding sits at the fiducial (zero) value of the remaining
/// ancillae and ℛ collects every output state whose ancilla rest differs
/// from it.
#[derive(Debug, Clone)]
pub struct DecodingMap {
    u_d: ComplexMatrix,
    dim_q: usize,
    dim_y: usize,
    dim_rest: usize,
    r_space: Subspace,
}

impl DecodingMap {
    pub fn new(u_d: ComplexMatrix, dim_q: usize, dim_y: usize, tol: f64) -> Result<Self> {
        if !u_d.is_square() {
            return Err(Error::NotSquare {
                rows: u_d.rows(),
                cols: u_d.cols(),
            });
        }
        let d = u_d.rows();
        let qy = dim_q * dim_y;
        if qy == 0 || d % qy != 0 {
            return Err(Error::DimensionMismatch {
                expected: qy.max(1),
                got: d,
            });
        }
        let res = u_d.unitarity_residual();
        if res > tol {
            return Err(Error::NotUnitary { residual: res });
        }
        let dim_rest = d / qy;
        // R = output basis states with a non-fiducial ancilla rest
        let mut r_basis = Vec::new();
        for idx in 0..d {
            if idx % dim_rest != 0 {
                r_basis.push(StateVector::basis_state(d, idx));
            }
        }
        let r_space = Subspace::new(d, r_basis, tol)?;
        Ok(Self {
            u_d,
            dim_q,
            dim_y,
            dim_rest,
            r_space,
        })
    }

    pub fn u_d(&self) -> &ComplexMatrix {
        &self.u_d
    }

    pub fn dim(&self) -> usize {
        self.u_d.rows()
    }

    pub fn dim_q(&self) -> usize {
        self.dim_q
    }

    pub fn dim_y(&self) -> usize {
        self.dim_y
    }

    pub fn r_space(&self) -> &Subspace {
        &self.r_space
    }

    /// Output index of |q⟩ ⊗ |y⟩ ⊗ |fiducial rest⟩.
    fn embed_index(&self, q: usize, y: usize) -> usize {
        (q * self.dim_y + y) * self.dim_rest
    }

    /// Embeds ψ ⊗ χ (ψ ∈ ℂ^{dim_q}, χ ∈ ℂ^{dim_y}) at the fiducial ancilla.
    pub fn embed(&self, psi: &StateVector, chi: &StateVector) -> StateVector {
        assert_eq!(psi.dim(), self.dim_q);
        assert_eq!(chi.dim(), self.dim_y);
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        for q in 0..self.dim_q {
            for y in 0..self.dim_y {
                amps[self.embed_index(q, y)] = psi.amplitudes()[q] * chi.amplitudes()[y];
            }
        }
        StateVector::new(amps).expect("finite inputs")
    }

    /// Restriction of an output vector to the Q ⊗ Y embedding, as a
    /// dim_q × dim_y matrix, plus the norm of everything outside it.
    pub fn restrict(&self, w: &StateVector) -> (ComplexMatrix, f64) {
        assert_eq!(w.dim(), self.dim());
        let m = ComplexMatrix::from_fn(self.dim_q, self.dim_y, |q, y| {
            w.amplitudes()[self.embed_index(q, y)]
        });
        let inside = m.frobenius_norm();
        let total = w.norm();
        let out_sq = (total * total - inside * inside).max(0.0);
        (m, out_sq.sqrt())
    }
}

/// The implemented encoding: columns are the encoded logical basis states.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    encoder: ComplexMatrix,
    ancilla_label: String,
}

impl CodeSpec {
    pub fn new(encoder: ComplexMatrix, tol: f64) -> Result<Self> {
        let res = encoder.unitarity_residual();
        if res > tol {
            return Err(Error::NotIsometry { residual: res });
        }
        Ok(Self {
            encoder,
            ancilla_label: "|0...0>".to_string(),
        })
    }

    pub fn with_ancilla_label(mut self, label: impl Into<String>) -> Self {
        self.ancilla_label = label.into();
        self
    }

    pub fn encoder(&self) -> &ComplexMatrix {
        &self.encoder
    }

    pub fn dim_q(&self) -> usize {
        self.encoder.cols()
    }

    pub fn ancilla_label(&self) -> &str {
        &self.ancilla_label
    }
}

/// Per-error outcome of a stability check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    /// Decoded as |ψ⟩ ⊗ |φ_E⟩ within tolerance.
    Stable,
    /// The error annihilates the code; stable with φ_E = 0.
    ZeroSyndrome,
    /// Decoded state does not factor (entangled or leaking into ℛ).
    FactorizationFailed,
    /// Decoded logical state differs from the input one.
    LogicalMismatch,
    /// Syndrome vectors disagree across the logical basis.
    PhiInconsistent,
}

/// Syndrome extraction result for one error operator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SyndromeRecord {
    pub error_label: String,
    pub phi_e: StateVector,
    pub zero: bool,
    pub fidelity_deficit: f64,
    pub status: RecordStatus,
}

impl SyndromeRecord {
    pub fn passed(&self) -> bool {
        matches!(self.status, RecordStatus::Stable | RecordStatus::ZeroSyndrome)
    }
}

/// Output of [`verify_stability`]: per-error records plus the reference
/// syndrome data shared by the whole run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StabilityReport {
    pub records: Vec<SyndromeRecord>,
    pub phi_r: StateVector,
    pub reference_deficit: f64,
    pub worst_deficit: f64,
    pub leakage: f64,
    pub dim_y: usize,
    pub all_stable: bool,
}

/// Decodes every logical basis column under E = 𝟙 and extracts the common
/// syndrome reference state, requiring clean factorization.
pub fn reference_syndrome(d_map: &DecodingMap, code: &CodeSpec, tol: f64) -> Result<StateVector> {
    let dim_q = code.dim_q();
    if d_map.dim_q() != dim_q || d_map.dim() != code.encoder().rows() {
        return Err(Error::DimensionMismatch {
            expected: d_map.dim_q(),
            got: dim_q,
        });
    }
    let mut phi: Option<StateVector> = None;
    for j in 0..dim_q {
        let w = d_map.u_d().mul_vec(&code.encoder().column(j));
        let (m, leak) = d_map.restrict(&w);
        if leak > tol {
            return Err(Error::ReferenceFactorization(format!(
                "column {j} leaks {leak:.3e} outside the Q⊗Y embedding"
            )));
        }
        let flat = StateVector::new(
            (0..dim_q * d_map.dim_y())
                .map(|i| m.get(i / d_map.dim_y(), i % d_map.dim_y()))
                .collect(),
        )
        .expect("finite");
        match factor_product(&flat, dim_q, d_map.dim_y(), tol)? {
            Factorization::Product { y, .. } => {
                let canon = y.phase_canonical();
                if let Some(prev) = &phi {
                    if prev.sub(&canon).norm() > tol {
                        return Err(Error::ReferenceFactorization(format!(
                            "syndrome factors disagree across the logical basis \
                             (|Δ| = {:.3e})",
                            prev.sub(&canon).norm()
                        )));
                    }
                } else {
                    phi = Some(canon);
                }
            }
            Factorization::Zero => {
                return Err(Error::ReferenceFactorization(format!(
                    "column {j} decodes to zero"
                )))
            }
            Factorization::Entangled => {
                return Err(Error::ReferenceFactorization(format!(
                    "column {j} decodes to an entangled Q–Y state"
                )))
            }
        }
    }
    Ok(phi.expect("dim_q ≥ 1"))
}

/// Internal per-error evaluation shared by stability and leakage checks.
struct ColumnData {
    /// Decoded output per logical column.
    decoded: Vec<StateVector>,
    /// Row-extracted syndrome per logical column.
    phi_cols: Vec<StateVector>,
    /// Per-column residual ‖w − embed(e_j ⊗ φ_j)‖.
    residuals: Vec<f64>,
    /// Q⊗Y restriction per column, for diagnosis.
    restricted: Vec<StateVector>,
}

fn evaluate_error(d_map: &DecodingMap, code: &CodeSpec, e: &ComplexMatrix) -> ColumnData {
    let dim_q = code.dim_q();
    let dim_y = d_map.dim_y();
    let mut decoded = Vec::with_capacity(dim_q);
    let mut phi_cols = Vec::with_capacity(dim_q);
    let mut residuals = Vec::with_capacity(dim_q);
    let mut restricted = Vec::with_capacity(dim_q);
    for j in 0..dim_q {
        let w = d_map.u_d().mul_vec(&e.mul_vec(&code.encoder().column(j)));
        let (m, _) = d_map.restrict(&w);
        let phi_j =
            StateVector::new((0..dim_y).map(|y| m.get(j, y)).collect()).expect("finite");
        // everything that is not e_j ⊗ φ_j at the fiducial ancilla
        let ideal = d_map.embed(&StateVector::basis_state(dim_q, j), &phi_j);
        residuals.push(w.sub(&ideal).norm());
        restricted.push(
            StateVector::new(
                (0..dim_q * dim_y)
                    .map(|i| m.get(i / dim_y, i % dim_y))
                    .collect(),
            )
            .expect("finite"),
        );
        decoded.push(w);
        phi_cols.push(phi_j);
    }
    ColumnData {
        decoded,
        phi_cols,
        residuals,
        restricted,
    }
}

/// Mean of the per-column syndromes; the common φ_E when the check passes.
fn common_phi(cols: &[StateVector]) -> StateVector {
    let dim = cols[0].dim();
    let mut acc = StateVector::zeros(dim);
    for c in cols {
        acc = acc.add(c);
    }
    acc.scale(Complex64::new(1.0 / cols.len() as f64, 0.0))
}

/// Verifies that each error acts as (identity on the logical factor) ⊗
/// (syndrome shift) on decoded code states. Linearity extends the verdict
/// from the supplied basis to its whole span.
pub fn verify_stability(
    d_map: &DecodingMap,
    code: &CodeSpec,
    errors: &[(String, ComplexMatrix)],
    tol: &Tolerances,
) -> Result<StabilityReport> {
    let dim_q = code.dim_q();
    if d_map.dim_q() != dim_q || d_map.dim() != code.encoder().rows() {
        return Err(Error::DimensionMismatch {
            expected: d_map.dim(),
            got: code.encoder().rows(),
        });
    }
    for (_, e) in errors {
        if !e.is_square() || e.rows() != d_map.dim() {
            return Err(Error::DimensionMismatch {
                expected: d_map.dim(),
                got: e.rows(),
            });
        }
    }
    let dim_y = d_map.dim_y();

    // reference syndrome from the identity error, extracted leniently so a
    // defective pipeline yields a failing report instead of an error
    let identity = ComplexMatrix::identity(d_map.dim());
    let ref_data = evaluate_error(d_map, code, &identity);
    let phi_r_raw = common_phi(&ref_data.phi_cols);
    let reference_deficit = ref_data
        .residuals
        .iter()
        .cloned()
        .chain(
            ref_data
                .phi_cols
                .iter()
                .map(|p| p.sub(&phi_r_raw).norm()),
        )
        .fold(0.0_f64, f64::max);
    let phi_r = phi_r_raw.phase_canonical();

    let mut records = Vec::with_capacity(errors.len());
    let mut worst = reference_deficit;
    let mut leakage: f64 = 0.0;
    for (label, e) in errors {
        let data = evaluate_error(d_map, code, e);
        let phi_e = common_phi(&data.phi_cols);
        let consistency = data
            .phi_cols
            .iter()
            .map(|p| p.sub(&phi_e).norm())
            .fold(0.0_f64, f64::max);
        let residual = data.residuals.iter().cloned().fold(0.0_f64, f64::max);
        let deficit = residual.max(consistency);
        let zero = phi_e.norm() <= tol.atol && deficit <= tol.deficit_threshold;
        let status = if deficit <= tol.deficit_threshold {
            if zero {
                RecordStatus::ZeroSyndrome
            } else {
                RecordStatus::Stable
            }
        } else {
            diagnose_failure(d_map, code, &data, tol)
        };
        // amplitude outside span{|ψ⟩_Q ⊗ φ_E}: leakage in the paper's sense
        let phi_norm = phi_e.norm();
        for w in &data.decoded {
            let leak_sq = if phi_norm <= tol.atol {
                w.norm() * w.norm()
            } else {
                let phi_hat = phi_e.scale(Complex64::new(1.0 / phi_norm, 0.0));
                let mut kept = 0.0;
                for q in 0..dim_q {
                    let basis_vec = d_map.embed(&StateVector::basis_state(dim_q, q), &phi_hat);
                    kept += basis_vec.inner(w).norm_sqr();
                }
                (w.norm() * w.norm() - kept).max(0.0)
            };
            leakage = leakage.max(leak_sq);
        }
        worst = worst.max(deficit);
        records.push(SyndromeRecord {
            error_label: label.clone(),
            phi_e,
            zero,
            fidelity_deficit: deficit,
            status,
        });
    }
    let all_stable =
        records.iter().all(|r| r.passed()) && reference_deficit <= tol.deficit_threshold;
    Ok(StabilityReport {
        records,
        phi_r,
        reference_deficit,
        worst_deficit: worst,
        leakage,
        dim_y,
        all_stable,
    })
}

fn diagnose_failure(
    d_map: &DecodingMap,
    code: &CodeSpec,
    data: &ColumnData,
    tol: &Tolerances,
) -> RecordStatus {
    let dim_q = code.dim_q();
    let dim_y = d_map.dim_y();
    let mut logical_mismatch = false;
    for (j, flat) in data.restricted.iter().enumerate() {
        // leakage into ℛ already rules out the product form
        let leak = (data.decoded[j].norm().powi(2) - flat.norm().powi(2)).max(0.0);
        if leak.sqrt() > tol.deficit_threshold.sqrt() {
            return RecordStatus::FactorizationFailed;
        }
        match factor_product(flat, dim_q, dim_y, tol.atol) {
            Ok(Factorization::Product { q, .. }) => {
                let target = StateVector::basis_state(dim_q, j);
                if (q.inner(&target).norm() - 1.0).abs() > tol.atol.sqrt() {
                    logical_mismatch = true;
                }
            }
            Ok(Factorization::Zero) => {}
            Ok(Factorization::Entangled) | Err(_) => return RecordStatus::FactorizationFailed,
        }
    }
    if logical_mismatch {
        RecordStatus::LogicalMismatch
    } else {
        RecordStatus::PhiInconsistent
    }
}

/// Tr(ϱ_Y²) of the decoded ancilla state for the encoded maximally mixed
/// logical input; 1 when the encoder lands cleanly in U_d⁻¹(Q ⊗ φ_r).
pub fn purity_check(d_map: &DecodingMap, code: &CodeSpec) -> f64 {
    let d = d_map.dim();
    let dim_q = code.dim_q();
    let anc = d / dim_q;
    // encoded maximally mixed logical state, decoded
    let enc = code.encoder();
    let rho_in = enc
        .matmul(&enc.dagger())
        .scale(Complex64::new(1.0 / dim_q as f64, 0.0));
    let rho_dec = d_map.u_d().matmul(&rho_in).matmul(&d_map.u_d().dagger());
    // partial trace over the leading Q factor
    let mut rho_anc = ComplexMatrix::zeros(anc, anc);
    for q in 0..dim_q {
        for a in 0..anc {
            for b in 0..anc {
                let add = rho_dec.get(q * anc + a, q * anc + b);
                rho_anc.set(a, b, rho_anc.get(a, b) + add);
            }
        }
    }
    rho_anc.matmul(&rho_anc).trace().re
}

/// Worst-case squared amplitude decoded outside span{|ψ⟩_Q ⊗ |φ_E⟩_Y} over
/// an error basis; zero syndromes contribute their full decoded norm.
pub fn leakage_check(
    d_map: &DecodingMap,
    code: &CodeSpec,
    errors: &OperatorSpace,
    tol: &Tolerances,
) -> Result<f64> {
    let labeled: Vec<(String, ComplexMatrix)> = errors
        .basis()
        .iter()
        .enumerate()
        .map(|(i, e)| (format!("basis[{i}]"), e.clone()))
        .collect();
    Ok(verify_stability(d_map, code, &labeled, tol)?.leakage)
}

/// Span of the syndrome vectors reached by a verified error-algebra basis:
/// the reachable space 𝒱 ⊆ 𝒴. Zero syndromes are dropped.
pub fn reachable_space(report: &StabilityReport, tol: f64) -> Subspace {
    let nonzero: Vec<StateVector> = report
        .records
        .iter()
        .filter(|r| !r.zero && r.phi_e.norm() > tol)
        .map(|r| r.phi_e.clone())
        .collect();
    if nonzero.is_empty() {
        return Subspace::zero(report.dim_y, tol);
    }
    orthonormalize(&nonzero, tol).expect("nonempty, consistent dims")
}

/// DFS / NS classification of a reachable space inside 𝒴.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// dim 𝒱 = 1: the syndrome state is invariant.
    Dfs,
    /// 1 < dim 𝒱 < dim 𝒴: noiseless conditionally on initialization in 𝒱.
    ConditionalNs,
    /// dim 𝒱 = dim 𝒴 > 1: noiseless for every syndrome state.
    FullNs,
    /// Stability did not hold (or 𝒱 is empty).
    Failed,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::Dfs => "DFS",
            Classification::ConditionalNs => "ConditionalNS",
            Classification::FullNs => "FullNS",
            Classification::Failed => "Failed",
        };
        write!(f, "{s}")
    }
}

/// Case split on (dim 𝒱, dim 𝒴). A one-dimensional 𝒴 with dim 𝒱 = 1 is a
/// DFS; an empty 𝒱 reports as Failed.
pub fn classify(v: &Subspace, dim_y: usize) -> Classification {
    let dv = v.dim();
    if dv == 0 {
        Classification::Failed
    } else if dv == 1 {
        Classification::Dfs
    } else if dv < dim_y {
        Classification::ConditionalNs
    } else {
        Classification::FullNs
    }
}

/// Outcome of the brute-force restriction check.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OracleOutcome {
    pub pass: bool,
    pub max_residual: f64,
}

/// Brute-force check that the algebra, conjugated by U_d, restricts to
/// 𝟙_Q ⊗ End(𝒱) on Q ⊗ 𝒱: for every algebra basis element, every 𝒱 basis
/// state and every logical basis state, the image must stay in Q ⊗ 𝒴,
/// keep the logical state intact, move the syndrome independently of the
/// logical state and stay inside 𝒱.
///
/// Independent of [`verify_stability`]; no encoder is involved.
pub fn theorem_oracle(
    alg: &ErrorAlgebra,
    d_map: &DecodingMap,
    v: &Subspace,
    threshold: f64,
) -> OracleOutcome {
    let dim_q = d_map.dim_q();
    let mut max_residual: f64 = 0.0;
    let ud = d_map.u_d();
    let ud_dag = ud.dagger();
    for e in alg.space().basis() {
        let tilde = ud.matmul(e).matmul(&ud_dag);
        for chi in v.basis() {
            let mut etas: Vec<StateVector> = Vec::with_capacity(dim_q);
            for q in 0..dim_q {
                let input = d_map.embed(&StateVector::basis_state(dim_q, q), chi);
                let out = tilde.mul_vec(&input);
                let (m, _) = d_map.restrict(&out);
                let eta = StateVector::new(
                    (0..d_map.dim_y()).map(|y| m.get(q, y)).collect(),
                )
                .expect("finite");
                // residual: everything except e_q ⊗ η at the fiducial ancilla
                let ideal = d_map.embed(&StateVector::basis_state(dim_q, q), &eta);
                max_residual = max_residual.max(out.sub(&ideal).norm());
                etas.push(eta);
            }
            // syndrome action must not depend on the logical state
            let mean = common_phi(&etas);
            for eta in &etas {
                max_residual = max_residual.max(eta.sub(&mean).norm());
            }
            // and must stay inside 𝒱
            max_residual = max_residual.max(v.residual_norm(&mean));
        }
    }
    OracleOutcome {
        pass: max_residual <= threshold,
        max_residual,
    }
}

/// Bookkeeping from [`enlarge_error_set`]: the enlarged span plus which
/// ordered algebra pairs were admitted into it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Enlargement {
    /// Ordered pairs (later, earlier): index pairs admitted as later·earlier.
    pub included_pairs: Vec<(usize, usize)>,
    /// Ordered pairs rejected by the reachability condition.
    pub excluded_pairs: Vec<(usize, usize)>,
    pub space: OperatorSpace,
}

/// Enlarges a family of individually verified error algebras to the span of
/// admissible two-letter products B·A (B applied after A).
///
/// B·A is admitted when B's verified reachable space covers everything A
/// can produce: unconditionally if 𝒱_B = 𝒴, otherwise only if 𝒱_A ⊆ 𝒱_B.
/// The single-letter spans are always included. Longer words are reached by
/// re-running the enlargement or closing the result into an algebra.
pub fn enlarge_error_set(
    verified: &[(ErrorAlgebra, Subspace)],
    dim_y: usize,
    tol: f64,
) -> Result<Enlargement> {
    if verified.is_empty() {
        return Err(Error::EmptyInput("enlarge_error_set"));
    }
    let mut ops: Vec<ComplexMatrix> = Vec::new();
    for (alg, _) in verified {
        ops.extend(alg.space().basis().iter().cloned());
    }
    let mut included = Vec::new();
    let mut excluded = Vec::new();
    for (bi, (alg_b, v_b)) in verified.iter().enumerate() {
        let unconditional = v_b.dim() == dim_y;
        for (ai, (alg_a, v_a)) in verified.iter().enumerate() {
            let admissible = unconditional || v_b.contains_subspace(v_a, tol);
            if admissible {
                included.push((bi, ai));
                for b in alg_b.space().basis() {
                    for a in alg_a.space().basis() {
                        ops.push(b.matmul(a));
                    }
                }
            } else {
                excluded.push((bi, ai));
            }
        }
    }
    let space = OperatorSpace::span_of(&ops, tol)?;
    Ok(Enlargement {
        included_pairs: included,
        excluded_pairs: excluded,
        space,
    })
}

/// Full verification report for one error set against one decoding.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub records: Vec<SyndromeRecord>,
    pub phi_r: StateVector,
    pub v_space: Subspace,
    pub classification: Classification,
    pub purity: f64,
    pub leakage: f64,
    pub worst_deficit: f64,
    pub tolerances: Tolerances,
}

impl VerificationReport {
    /// Assembles the report for a verified algebra: stability on its basis,
    /// reachable space, classification, purity and leakage.
    pub fn assemble(
        stability: StabilityReport,
        d_map: &DecodingMap,
        code: &CodeSpec,
        tol: &Tolerances,
    ) -> Self {
        let v = reachable_space(&stability, tol.atol);
        let classification = if stability.all_stable {
            classify(&v, stability.dim_y)
        } else {
            Classification::Failed
        };
        let purity = purity_check(d_map, code);
        VerificationReport {
            schema: REPORT_SCHEMA.to_string(),
            phi_r: stability.phi_r.clone(),
            v_space: v,
            classification,
            purity,
            leakage: stability.leakage,
            worst_deficit: stability.worst_deficit,
            records: stability.records,
            tolerances: *tol,
        }
    }

    pub fn passed(&self) -> bool {
        self.classification != Classification::Failed
    }
}
