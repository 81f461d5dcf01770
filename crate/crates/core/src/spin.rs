//! The three-qubit collective-noise system.
//!
//! Three spin-½ qubits split under total angular momentum into a j = 3/2
//! quadruplet and two j = 1/2 doublets. The doublet pair carries a protected
//! qubit: collective errors act only on the j_z label (the syndrome), never
//! on the copy label (the logical factor). This module builds the coupled
//! basis, the explicit block isometry, the twenty-dimensional collective
//! algebra and the end-to-end verification scenarios.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{collective_dephasing, collective_spin_ops, compose, Axis, Channel};
use crate::decomp::{SubsystemBlock, SubsystemDecomposition};
use crate::error::Result;
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::subspace::{orthonormalize, Subspace};
use crate::linalg::vector::StateVector;
use crate::opspace::{algebra_closure, ErrorAlgebra, OperatorSpace};
use crate::verify::{
    classify, enlarge_error_set, reachable_space, theorem_oracle, verify_stability,
    Classification, CodeSpec, DecodingMap, Enlargement, OracleOutcome, StabilityReport,
    Tolerances, VerificationReport,
};

/// Angular momentum labels stored as doubled integers (2j, 2j_z) so
/// half-integers stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinLabel {
    pub twice_j: u32,
    pub twice_jz: i32,
    pub copy: usize,
}

impl SpinLabel {
    pub fn j(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    pub fn jz(&self) -> f64 {
        self.twice_jz as f64 / 2.0
    }
}

/// Simultaneous eigenbasis of J² and J_z for three qubits, with ladder
/// phases fixed by the Condon–Shortley convention (lowering matrix elements
/// real non-negative) and |0⟩ the spin-up, j_z = +½ state.
#[derive(Debug, Clone)]
pub struct SpinBasis {
    labels: Vec<SpinLabel>,
    vectors: Vec<StateVector>,
}

impl SpinBasis {
    pub fn labels(&self) -> &[SpinLabel] {
        &self.labels
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    pub fn vector(&self, twice_j: u32, twice_jz: i32, copy: usize) -> &StateVector {
        let idx = self
            .labels
            .iter()
            .position(|l| l.twice_j == twice_j && l.twice_jz == twice_jz && l.copy == copy)
            .expect("label exists");
        &self.vectors[idx]
    }
}

fn lowering_operator() -> ComplexMatrix {
    let (jx, jy, _) = collective_spin_ops(3);
    jx.sub(&jy.scale(Complex64::new(0.0, 1.0)))
}

/// Builds the coupled basis: the j = 3/2 multiplet from the highest-weight
/// state |000⟩, copy 0 of j = 1/2 from the qubit-(1,2) singlet, copy 1 as
/// the remaining m = +½ direction with its |001⟩ amplitude real positive.
pub fn build_spin_basis() -> SpinBasis {
    let jm = lowering_operator();
    let inv_sqrt2 = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);

    // j = 3/2 ladder, top |000⟩ = |j_z=+3/2⟩
    let mut quad = vec![StateVector::basis_state(8, 0)];
    for _ in 0..3 {
        let next = jm.mul_vec(quad.last().unwrap());
        quad.push(next.normalized());
    }

    // copy 0: singlet on qubits 1,2 tensored with |0⟩ on qubit 3
    // (|010⟩ − |100⟩)/√2 at indices 2 and 4
    let mut c0_top = StateVector::zeros(8);
    c0_top = c0_top
        .add(&StateVector::basis_state(8, 0b010).scale(inv_sqrt2))
        .sub(&StateVector::basis_state(8, 0b100).scale(inv_sqrt2));
    let c0_bot = jm.mul_vec(&c0_top).normalized();

    // copy 1 top: the m = +½ direction orthogonal to the quadruplet and to
    // copy 0; phase fixed through the |001⟩ amplitude
    let mut c1_top = StateVector::basis_state(8, 0b001);
    for b in [&quad[1], &c0_top] {
        c1_top = c1_top.sub(&b.scale(b.inner(&c1_top)));
    }
    c1_top = c1_top.normalized();
    let lead = c1_top.amplitudes()[0b001];
    c1_top = c1_top.scale(lead.conj().scale(1.0 / lead.norm()));
    let c1_bot = jm.mul_vec(&c1_top).normalized();

    let labels = vec![
        SpinLabel { twice_j: 3, twice_jz: 3, copy: 0 },
        SpinLabel { twice_j: 3, twice_jz: 1, copy: 0 },
        SpinLabel { twice_j: 3, twice_jz: -1, copy: 0 },
        SpinLabel { twice_j: 3, twice_jz: -3, copy: 0 },
        SpinLabel { twice_j: 1, twice_jz: 1, copy: 0 },
        SpinLabel { twice_j: 1, twice_jz: -1, copy: 0 },
        SpinLabel { twice_j: 1, twice_jz: 1, copy: 1 },
        SpinLabel { twice_j: 1, twice_jz: -1, copy: 1 },
    ];
    let vectors = vec![
        quad[0].clone(),
        quad[1].clone(),
        quad[2].clone(),
        quad[3].clone(),
        c0_top,
        c0_bot,
        c1_top,
        c1_bot,
    ];

    let basis = SpinBasis { labels, vectors };
    debug_assert!(spin_basis_residual(&basis) < 1e-10);
    basis
}

/// Worst-case deviation of the basis from the labeled J², J_z eigenactions.
pub fn spin_basis_residual(basis: &SpinBasis) -> f64 {
    let (jx, jy, jz) = collective_spin_ops(3);
    let j2 = jx.matmul(&jx).add(&jy.matmul(&jy)).add(&jz.matmul(&jz));
    let mut worst: f64 = 0.0;
    for (label, v) in basis.labels.iter().zip(&basis.vectors) {
        let j = label.j();
        let want_j2 = Complex64::new(j * (j + 1.0), 0.0);
        worst = worst.max(j2.mul_vec(v).sub(&v.scale(want_j2)).norm());
        let want_jz = Complex64::new(label.jz(), 0.0);
        worst = worst.max(jz.mul_vec(v).sub(&v.scale(want_jz)).norm());
    }
    worst
}

/// The explicit isometry realizing ℂ⁸ → ℒ ⊗ 𝒵 ⊕ (j = 3/2 complement):
/// one (mult 2, irrep 2) block with columns ordered (copy, j_z) ℒ-major,
/// j_z ∈ {+½, −½}.
pub fn build_omega() -> SubsystemDecomposition {
    let basis = build_spin_basis();
    let columns = vec![
        basis.vector(1, 1, 0).clone(),
        basis.vector(1, -1, 0).clone(),
        basis.vector(1, 1, 1).clone(),
        basis.vector(1, -1, 1).clone(),
    ];
    let isometry = ComplexMatrix::from_columns(&columns).expect("consistent dims");
    let block = SubsystemBlock::new(2, 2, isometry).expect("orthonormal columns");
    let complement = Subspace::new(
        8,
        (0..4).map(|i| basis.vectors()[i].clone()).collect(),
        crate::DEFAULT_ATOL,
    )
    .expect("orthonormal quadruplet");
    SubsystemDecomposition::new(8, vec![block], complement).expect("covers ℂ⁸")
}

/// The collective error algebra: closure of span{𝟙, J_x, J_y, J_z}.
pub fn build_collective_algebra() -> ErrorAlgebra {
    let (jx, jy, jz) = collective_spin_ops(3);
    let gen = OperatorSpace::span_of(&[jx, jy, jz], crate::DEFAULT_ATOL)
        .expect("nonempty generators");
    algebra_closure(&gen, true).expect("spin components close")
}

/// The three qubit-transposition permutation matrices on ℂ⁸
/// (qubit order: index bit 2 = qubit 1, bit 1 = qubit 2, bit 0 = qubit 3).
pub fn qubit_transpositions() -> [ComplexMatrix; 3] {
    let perm = |swap: fn(usize) -> usize| {
        ComplexMatrix::from_fn(8, 8, |i, j| {
            if swap(j) == i {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    };
    let swap12 = |idx: usize| (idx & 0b001) | ((idx & 0b100) >> 1) | ((idx & 0b010) << 1);
    let swap23 = |idx: usize| (idx & 0b100) | ((idx & 0b010) >> 1) | ((idx & 0b001) << 1);
    let swap13 = |idx: usize| (idx & 0b010) | ((idx & 0b100) >> 2) | ((idx & 0b001) << 2);
    [perm(swap12), perm(swap23), perm(swap13)]
}

/// Kraus operators of the collective dephasing channel along `axis`, with
/// their conventional labels K0..K3.
pub fn labeled_axis_kraus(axis: Axis) -> Vec<(String, ComplexMatrix)> {
    collective_dephasing(axis, 3)
        .kraus()
        .iter()
        .enumerate()
        .map(|(a, k)| (format!("K{a}^{}", axis.label()), k.clone()))
        .collect()
}

/// The abelian single-axis algebra 𝒜_u = span{K_a^u}.
pub fn axis_algebra(axis: Axis) -> ErrorAlgebra {
    let kraus = collective_dephasing(axis, 3);
    let space =
        OperatorSpace::span_of(kraus.kraus(), crate::DEFAULT_ATOL).expect("nonempty");
    ErrorAlgebra::try_from_space(space).expect("projector span is an algebra")
}

/// Syndrome reference choice: which j_z eigenstate the encoder prepares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reference {
    PlusHalf,
    MinusHalf,
}

impl Reference {
    pub fn label(&self) -> &'static str {
        match self {
            Reference::PlusHalf => "+1/2",
            Reference::MinusHalf => "-1/2",
        }
    }
}

/// The scenarios' implemented decoding: the block isometry extended by the
/// fixed pairing of the j = 3/2 quadruplet onto the non-fiducial ancilla
/// slots. Output order is Q ⊗ Y ⊗ (one ancilla qubit).
pub fn default_decoding(tol: f64) -> DecodingMap {
    let basis = build_spin_basis();
    let mut u = ComplexMatrix::zeros(8, 8);
    let mut add_row = |out: usize, v: &StateVector| {
        for c in 0..8 {
            let cur = u.get(out, c);
            u.set(out, c, cur + v.amplitudes()[c].conj());
        }
    };
    for (l, copy) in [(0usize, 0usize), (1, 1)] {
        add_row(4 * l, basis.vector(1, 1, copy));
        add_row(4 * l + 2, basis.vector(1, -1, copy));
    }
    for k in 0..4 {
        add_row(2 * k + 1, &basis.vectors()[k]);
    }
    DecodingMap::new(u, 2, 2, tol).expect("maps an orthonormal basis to another")
}

/// Encoder preparing logical states with the syndrome in the chosen
/// reference: column ℓ encodes to the copy-ℓ doublet state.
pub fn encoder(reference: Reference, tol: f64) -> CodeSpec {
    let basis = build_spin_basis();
    let twice_jz = match reference {
        Reference::PlusHalf => 1,
        Reference::MinusHalf => -1,
    };
    let columns = vec![
        basis.vector(1, twice_jz, 0).clone(),
        basis.vector(1, twice_jz, 1).clone(),
    ];
    CodeSpec::new(
        ComplexMatrix::from_columns(&columns).expect("consistent dims"),
        tol,
    )
    .expect("orthonormal columns")
}

fn labeled_basis(prefix: &str, space: &OperatorSpace) -> Vec<(String, ComplexMatrix)> {
    space
        .basis()
        .iter()
        .enumerate()
        .map(|(i, b)| (format!("{prefix}[{i}]"), b.clone()))
        .collect()
}

/// Verification results for one single-axis algebra.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxisOutcome {
    pub axis: Axis,
    pub algebra_dim: usize,
    pub v_dim: usize,
    pub report: VerificationReport,
    pub oracle: OracleOutcome,
}

/// Results for the full collective algebra.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CollectiveOutcome {
    pub algebra_dim: usize,
    pub v_dim: usize,
    pub classification: Classification,
    pub oracle: OracleOutcome,
}

/// Bundle produced by [`scenario_single_axis`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SingleAxisBundle {
    pub schema: String,
    pub kraus_stability: StabilityReport,
    pub axes: Vec<AxisOutcome>,
    pub enlargement: Enlargement,
    pub enlarged_dim: usize,
    pub enlarged_contains_collective: bool,
    pub collective: CollectiveOutcome,
}

impl SingleAxisBundle {
    pub fn passed(&self) -> bool {
        self.kraus_stability.all_stable
            && self.axes.iter().all(|a| a.report.passed() && a.oracle.pass)
            && self.enlarged_contains_collective
            && self.collective.oracle.pass
    }
}

fn axis_outcome(
    axis: Axis,
    d_map: &DecodingMap,
    code: &CodeSpec,
    tol: &Tolerances,
) -> Result<AxisOutcome> {
    let alg = axis_algebra(axis);
    let labeled = labeled_basis(&format!("A_{}", axis.label()), alg.space());
    let stability = verify_stability(d_map, code, &labeled, tol)?;
    let report = VerificationReport::assemble(stability, d_map, code, tol);
    let v_dim = report.v_space.dim();
    let oracle = theorem_oracle(&alg, d_map, &report.v_space, tol.deficit_threshold);
    Ok(AxisOutcome {
        axis,
        algebra_dim: alg.dim(),
        v_dim,
        report,
        oracle,
    })
}

fn collective_outcome(
    d_map: &DecodingMap,
    code: &CodeSpec,
    tol: &Tolerances,
) -> Result<CollectiveOutcome> {
    let alg = build_collective_algebra();
    let labeled = labeled_basis("A_c", alg.space());
    let stability = verify_stability(d_map, code, &labeled, tol)?;
    let v = reachable_space(&stability, tol.atol);
    let classification = if stability.all_stable {
        classify(&v, stability.dim_y)
    } else {
        Classification::Failed
    };
    let oracle = theorem_oracle(&alg, d_map, &v, tol.deficit_threshold);
    Ok(CollectiveOutcome {
        algebra_dim: alg.dim(),
        v_dim: v.dim(),
        classification,
        oracle,
    })
}

/// First verification procedure: stability under the twelve single-axis
/// Kraus operators, per-axis reachable spaces and classifications, error-set
/// enlargement through admissible products and the brute-force restriction
/// check against the collective algebra.
pub fn scenario_single_axis(tol: &Tolerances) -> Result<SingleAxisBundle> {
    let d_map = default_decoding(tol.atol);
    let code = encoder(Reference::PlusHalf, tol.atol);

    let mut all_kraus = Vec::new();
    for axis in Axis::all() {
        all_kraus.extend(labeled_axis_kraus(axis));
    }
    let kraus_stability = verify_stability(&d_map, &code, &all_kraus, tol)?;

    let axes: Vec<AxisOutcome> = Axis::all()
        .into_iter()
        .map(|axis| axis_outcome(axis, &d_map, &code, tol))
        .collect::<Result<_>>()?;

    let verified: Vec<(ErrorAlgebra, Subspace)> = axes
        .iter()
        .map(|a| (axis_algebra(a.axis), a.report.v_space.clone()))
        .collect();
    let enlargement = enlarge_error_set(&verified, d_map.dim_y(), tol.atol)?;
    let collective_alg = build_collective_algebra();
    let enlarged_contains_collective = enlargement
        .space
        .contains(collective_alg.space(), tol.deficit_threshold);
    let enlarged_dim = enlargement.space.dim();

    let collective = collective_outcome(&d_map, &code, tol)?;

    Ok(SingleAxisBundle {
        schema: "nsverify-bundle-1".to_string(),
        kraus_stability,
        axes,
        enlargement,
        enlarged_dim,
        enlarged_contains_collective,
        collective,
    })
}

/// Bundle produced by [`scenario_composite`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompositeBundle {
    pub schema: String,
    pub channel_labels: (String, String),
    pub conjugate_relation_ok: bool,
    pub product_stability: StabilityReport,
    pub product_span_dim: usize,
    pub contains_collective: bool,
    pub collective: CollectiveOutcome,
}

impl CompositeBundle {
    pub fn passed(&self) -> bool {
        self.product_stability.all_stable
            && self.conjugate_relation_ok
            && self.contains_collective
            && self.collective.oracle.pass
    }
}

/// Second verification procedure: stability under the two conjugate
/// composite processes built by cascading the x and y channels, and the
/// containment of their product span over the collective algebra.
pub fn scenario_composite(tol: &Tolerances) -> Result<CompositeBundle> {
    let d_map = default_decoding(tol.atol);
    let code = encoder(Reference::PlusHalf, tol.atol);

    let ex = collective_dephasing(Axis::X, 3);
    let ey = collective_dephasing(Axis::Y, 3);
    let exy = compose(&ex, &ey, tol.atol)?;
    let eyx = compose(&ey, &ex, tol.atol)?;
    let conjugate_relation_ok = kraus_sets_adjoint_equal(&exy, &eyx, tol.atol);

    let mut products = Vec::with_capacity(32);
    for (a, ka) in ex.kraus().iter().enumerate() {
        for (b, kb) in ey.kraus().iter().enumerate() {
            products.push((format!("K{a}^x·K{b}^y"), ka.matmul(kb)));
            products.push((format!("K{b}^y·K{a}^x"), kb.matmul(ka)));
        }
    }
    let product_stability = verify_stability(&d_map, &code, &products, tol)?;

    let mats: Vec<ComplexMatrix> = products.iter().map(|(_, m)| m.clone()).collect();
    let span = OperatorSpace::span_of(&mats, tol.atol)?;
    let collective_alg = build_collective_algebra();
    let contains_collective = span.contains(collective_alg.space(), tol.deficit_threshold);

    let collective = collective_outcome(&d_map, &code, tol)?;

    Ok(CompositeBundle {
        schema: "nsverify-bundle-1".to_string(),
        channel_labels: (exy.label().to_string(), eyx.label().to_string()),
        conjugate_relation_ok,
        product_stability,
        product_span_dim: span.dim(),
        contains_collective,
        collective,
    })
}

fn kraus_sets_adjoint_equal(a: &Channel, b: &Channel, tol: f64) -> bool {
    let matches = |from: &Channel, to: &Channel| {
        from.kraus().iter().all(|k| {
            let target = k.dagger();
            to.kraus()
                .iter()
                .any(|m| m.sub(&target).frobenius_norm() <= tol)
        })
    };
    matches(a, b) && matches(b, a)
}

/// Per-reference results inside the two-reference scenario.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReferenceRun {
    pub reference: Reference,
    pub phi_r: StateVector,
    pub axes: Vec<AxisOutcome>,
}

/// Bundle produced by [`scenario_two_reference`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoReferenceBundle {
    pub schema: String,
    pub runs: Vec<ReferenceRun>,
    pub references_span_syndrome: bool,
    pub dfs_at_both_references: bool,
    pub pooled_v_dims: Vec<(Axis, usize)>,
    pub collective: CollectiveOutcome,
    pub ns_verified: bool,
}

/// Third procedure: DFS behavior observed at both j_z reference states.
/// Spanning references upgrade the per-axis DFS verdicts into the full
/// noiseless-subsystem verdict against the collective algebra.
pub fn scenario_two_reference(tol: &Tolerances) -> Result<TwoReferenceBundle> {
    let d_map = default_decoding(tol.atol);
    let mut runs = Vec::with_capacity(2);
    let mut phi_refs = Vec::with_capacity(2);
    for reference in [Reference::PlusHalf, Reference::MinusHalf] {
        let code = encoder(reference, tol.atol);
        let axes: Vec<AxisOutcome> = Axis::all()
            .into_iter()
            .map(|axis| axis_outcome(axis, &d_map, &code, tol))
            .collect::<Result<_>>()?;
        let phi_r = axes[0].report.phi_r.clone();
        phi_refs.push(phi_r.clone());
        runs.push(ReferenceRun {
            reference,
            phi_r,
            axes,
        });
    }

    let references_span_syndrome =
        orthonormalize(&phi_refs, tol.atol)?.dim() == d_map.dim_y();
    let dfs_at_both_references = runs.iter().all(|r| {
        r.axes
            .iter()
            .find(|a| a.axis == Axis::Z)
            .map(|a| a.report.classification == Classification::Dfs)
            .unwrap_or(false)
    });

    // pooled reachable spaces across the two references
    let mut pooled_v_dims = Vec::new();
    let mut pooled_all: Vec<StateVector> = Vec::new();
    for axis in Axis::all() {
        let mut vs = Vec::new();
        for run in &runs {
            let outcome = run.axes.iter().find(|a| a.axis == axis).unwrap();
            vs.extend(outcome.report.v_space.basis().iter().cloned());
        }
        pooled_all.extend(vs.iter().cloned());
        pooled_v_dims.push((axis, orthonormalize(&vs, tol.atol)?.dim()));
    }
    let pooled_v = orthonormalize(&pooled_all, tol.atol)?;

    let collective_alg = build_collective_algebra();
    let oracle = theorem_oracle(&collective_alg, &d_map, &pooled_v, tol.deficit_threshold);
    let all_stable = runs
        .iter()
        .all(|r| r.axes.iter().all(|a| a.report.passed()));
    let ns_verified =
        all_stable && references_span_syndrome && dfs_at_both_references && oracle.pass;
    let collective = CollectiveOutcome {
        algebra_dim: collective_alg.dim(),
        v_dim: pooled_v.dim(),
        classification: if ns_verified {
            Classification::FullNs
        } else {
            Classification::Failed
        },
        oracle,
    };

    Ok(TwoReferenceBundle {
        schema: "nsverify-bundle-1".to_string(),
        runs,
        references_span_syndrome,
        dfs_at_both_references,
        pooled_v_dims,
        collective,
        ns_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{identity_tensor_test, tilde_conjugate};

    #[test]
    fn highest_weight_is_all_zeros_ket() {
        let basis = build_spin_basis();
        let top = basis.vector(3, 3, 0);
        assert!((top.amplitudes()[0].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sector_dimensions_are_4_2_2() {
        let basis = build_spin_basis();
        let quad = basis.labels().iter().filter(|l| l.twice_j == 3).count();
        let c0 = basis
            .labels()
            .iter()
            .filter(|l| l.twice_j == 1 && l.copy == 0)
            .count();
        let c1 = basis
            .labels()
            .iter()
            .filter(|l| l.twice_j == 1 && l.copy == 1)
            .count();
        assert_eq!((quad, c0, c1), (4, 2, 2));
    }

    #[test]
    fn eigenactions_match_labels() {
        let basis = build_spin_basis();
        assert!(spin_basis_residual(&basis) < 1e-10);
    }

    #[test]
    fn copy1_top_matches_clebsch_gordan() {
        // √(2/3)|001⟩ − 1/√6 (|010⟩ + |100⟩)
        let basis = build_spin_basis();
        let v = basis.vector(1, 1, 1);
        let a = v.amplitudes();
        assert!((a[1].re - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((a[2].re + 1.0 / 6.0f64.sqrt()).abs() < 1e-12);
        assert!((a[4].re + 1.0 / 6.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn omega_conjugates_collective_elements_to_identity_tensor_form() {
        let omega = build_omega();
        let block = &omega.blocks()[0];
        let alg = build_collective_algebra();
        for a in alg.space().basis() {
            let t = tilde_conjugate(a, block).unwrap();
            assert!(identity_tensor_test(&t, 2, 2, 1e-8).is_some());
        }
    }

    #[test]
    fn omega_jz_restriction_is_diagonal_syndrome_action() {
        let omega = build_omega();
        let block = &omega.blocks()[0];
        let (_, _, jz) = collective_spin_ops(3);
        let t = tilde_conjugate(&jz, block).unwrap();
        let m = identity_tensor_test(&t, 2, 2, 1e-9).unwrap();
        let want = ComplexMatrix::from_real(2, 2, &[0.5, 0.0, 0.0, -0.5]).unwrap();
        assert!(m.sub(&want).frobenius_norm() < 1e-9);
    }

    #[test]
    fn collective_algebra_is_twenty_dimensional_and_permutation_invariant() {
        let alg = build_collective_algebra();
        assert_eq!(alg.dim(), 20);
        for p in qubit_transpositions() {
            for a in alg.space().basis() {
                let comm = p.matmul(a).sub(&a.matmul(&p));
                assert!(comm.frobenius_norm() < 1e-10);
            }
        }
    }

    #[test]
    fn axis_algebras_live_inside_the_collective_algebra() {
        let collective = build_collective_algebra();
        for axis in Axis::all() {
            let alg = axis_algebra(axis);
            assert_eq!(alg.dim(), 4);
            assert!(collective.space().contains(alg.space(), 1e-9));
        }
    }

    #[test]
    fn default_decoding_reference_is_plus_half() {
        let tol = Tolerances::default();
        let d_map = default_decoding(tol.atol);
        let code = encoder(Reference::PlusHalf, tol.atol);
        let phi = crate::verify::reference_syndrome(&d_map, &code, tol.atol).unwrap();
        assert!((phi.amplitudes()[0].re - 1.0).abs() < 1e-10);
        assert!(phi.amplitudes()[1].norm() < 1e-10);
    }
}
