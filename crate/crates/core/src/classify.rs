//! Controllability verdicts.
//!
//! Two kinds of evidence are combined: graph-theoretic shortcuts that
//! predict the dynamical Lie algebra from the network structure, and the
//! exact closure with its rank tests. Every verdict carries the tag of the
//! rule that produced it, and any disagreement between the two kinds is
//! reported instead of being resolved.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dense_oracle::{materialize, DENSE_MAX_SITES};
use crate::graph_analysis::{connected_components, disintegrate, DisintegrationResult};
use crate::lie_closure::{close, ClosureResult};
use crate::operator_space::{center_dimension, centralizer_dimension, dimension_su, projector_d, EchelonBasis};
use crate::rational::format_rational;
use crate::spin_model::{
    build_controls, build_graph, collective, gamma_partition, generators, Axis, GammaPartition, SpinNetwork,
};
use crate::{Error, Result};

/// Largest particle count for which the closure runs without an explicit cap.
pub const UNCAPPED_MAX_SITES: usize = 6;

/// Largest particle count for the invariant-form probe.
pub const PROBE_MAX_SITES: usize = 4;

/// Relative singular-value threshold used by the invariant-form probe.
pub const PROBE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictTag {
    /// All ratios distinct: controllable iff the graph is connected.
    DistinctRatioConnectivity,
    /// Disintegration isolates every particle and the graph is connected.
    DisintegrationConnectivity,
    /// Disintegration isolates every particle but the graph is disconnected:
    /// the algebra splits into one `su(2^{n_j})` per component.
    DisintegrationDecomposition,
    /// `dim L = 4ⁿ − 1`.
    ClosureRank,
    /// `dim L − dim centralizer(D) = 2·2ⁿ − 2`.
    CentralizerRank,
    /// Operator controllability implies state controllability.
    ImpliedByOperator,
    /// Equivalent state controllability coincides with state controllability.
    MirrorsState,
    Undetermined,
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        f.write_str(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub tag: VerdictTag,
    pub value: bool,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    /// `None` when neither a shortcut nor the closure could decide.
    pub value: Option<bool>,
    pub tag: VerdictTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

impl Verdict {
    fn decided(value: bool, tag: VerdictTag) -> Self {
        Verdict { value: Some(value), tag, cross_check: None }
    }

    fn undetermined() -> Self {
        Verdict { value: None, tag: VerdictTag::Undetermined, cross_check: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControlSubalgebraCheck {
    pub dimension: usize,
    /// `3r` over the blocks with nonzero ratio, when the ratio guard holds.
    pub expected_dimension: Option<usize>,
    /// Dimension matches and the closure equals the span of the collective operators.
    pub passed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisintegrationSummary {
    pub success: bool,
    /// One-based particle indices.
    pub final_partition: Vec<Vec<usize>>,
    pub passes: usize,
    pub splits: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeSummary {
    pub solution_dimension: usize,
    pub witness_found: bool,
    /// `σ_min/σ_max` of the witness form.
    pub conditioning: Option<f64>,
    pub abelian: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub control_axes: Vec<Axis>,
    pub full_dimension: u64,
    pub closure_dimension: Option<usize>,
    /// Reason the closure was not computed, when it was not.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_skipped: Option<String>,
    pub bracket_count: Option<usize>,
    pub saturated_early: Option<bool>,
    pub operator_controllable: Verdict,
    pub state_controllable: Verdict,
    pub equivalent_state_controllable: Verdict,
    pub centralizer_dimension: Option<usize>,
    pub center_dimension: Option<usize>,
    /// One-based particle indices grouped by equal ratio.
    pub gamma_blocks: Vec<Vec<usize>>,
    /// One-based particle indices per connected component.
    pub graph_components: Vec<Vec<usize>>,
    /// Ratios are nonzero per block, and for `{x, y}` control no two blocks
    /// have ratios of equal magnitude.
    pub ratio_guard: bool,
    pub distinct_ratio_shortcut_applicable: bool,
    pub disintegration_shortcut_applicable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disintegration: Option<DisintegrationSummary>,
    /// Predicted `4^{n_j} − 1` per component, when a shortcut applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_dimension: Option<usize>,
    pub control_subalgebra: ControlSubalgebraCheck,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic_probe: Option<ProbeSummary>,
    pub consistency_failures: Vec<String>,
    pub notes: Vec<String>,
    /// Closure basis rows as word → coefficient maps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<BTreeMap<String, String>>>,
}

impl AnalysisReport {
    pub fn is_consistent(&self) -> bool {
        self.consistency_failures.is_empty()
    }
}

#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    /// Abort the closure once its dimension exceeds this value.
    pub cap: Option<usize>,
    pub include_basis: bool,
    /// Skip the invariant-form probe.
    pub skip_probe: bool,
}

/// `dim L = 4ⁿ − 1`. The generators are traceless, so `L ⊆ su(2ⁿ)`.
pub fn operator_verdict(closure: &ClosureResult, n: usize) -> Verdict {
    Verdict::decided(closure.dimension == dimension_su(n), VerdictTag::ClosureRank)
}

/// Returns the verdict and the centralizer dimension of `D = i·e₁₁` in `L`.
pub fn state_verdict(l: &EchelonBasis, n: usize) -> Result<(Verdict, usize)> {
    let d = projector_d(n)?;
    let centralizer = centralizer_dimension(l, &d)?;
    let target = 2 * (1usize << n) - 2;
    Ok((Verdict::decided(l.dim() - centralizer == target, VerdictTag::CentralizerRank), centralizer))
}

/// Result of searching for an antisymmetric nondegenerate `J` with
/// `X·J + J·Xᵀ = 0` for every `X` in the algebra.
#[derive(Clone, Debug)]
pub struct SymplecticProbe {
    pub solution_dimension: usize,
    pub witness: Option<DMatrix<Complex64>>,
    pub conditioning: Option<f64>,
    pub abelian: bool,
}

impl SymplecticProbe {
    pub fn summary(&self) -> ProbeSummary {
        ProbeSummary {
            solution_dimension: self.solution_dimension,
            witness_found: self.witness.is_some(),
            conditioning: self.conditioning,
            abelian: self.abelian,
        }
    }
}

/// Numeric search for an invariant symplectic form. Advisory: the
/// centralizer rank test in [`state_verdict`] is decisive.
pub fn symplectic_probe(l: &EchelonBasis) -> Result<SymplecticProbe> {
    let n = l.n();
    if n > PROBE_MAX_SITES.min(DENSE_MAX_SITES) {
        return Err(Error::DenseCap { n, cap: PROBE_MAX_SITES });
    }
    let dim = 1usize << n;
    let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|a| (a + 1..dim).map(move |b| (a, b))).collect();
    let m = pairs.len();
    let unknowns = 2 * m;

    // Normal matrix of the real linear system in (Re J_ab, Im J_ab), a < b.
    let mut normal = DMatrix::<f64>::zeros(unknowns, unknowns);
    for row in l.rows() {
        let x = materialize(&row)?;
        let x = x.matrix();
        let mut block = DMatrix::<f64>::zeros(2 * dim * dim, unknowns);
        for (col, &(a, b)) in pairs.iter().enumerate() {
            // E = e_a e_bᵀ − e_b e_aᵀ; image = X E + E Xᵀ.
            let mut image = DMatrix::<Complex64>::zeros(dim, dim);
            for p in 0..dim {
                image[(p, b)] += x[(p, a)];
                image[(p, a)] -= x[(p, b)];
                image[(a, p)] += x[(p, b)];
                image[(b, p)] -= x[(p, a)];
            }
            for (idx, z) in image.iter().enumerate() {
                block[(idx, col)] = z.re;
                block[(dim * dim + idx, col)] = z.im;
                // Multiplying the unknown by i rotates the image.
                block[(idx, m + col)] = -z.im;
                block[(dim * dim + idx, m + col)] = z.re;
            }
        }
        normal += block.transpose() * &block;
    }

    let eigen = SymmetricEigen::new(normal);
    let max = eigen.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let threshold = PROBE_TOL * PROBE_TOL * max;
    let null: Vec<usize> = (0..unknowns).filter(|&i| eigen.eigenvalues[i] <= threshold).collect();
    let abelian = center_dimension(l)? == l.dim();

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut coeffs = nalgebra::DVector::<f64>::zeros(unknowns);
    for &i in &null {
        let weight: f64 = rng.random_range(1.0..2.0);
        coeffs += eigen.eigenvectors.column(i) * weight;
    }
    let mut witness = None;
    let mut conditioning = None;
    if !null.is_empty() {
        let mut j = DMatrix::<Complex64>::zeros(dim, dim);
        for (col, &(a, b)) in pairs.iter().enumerate() {
            let z = Complex64::new(coeffs[col], coeffs[m + col]);
            j[(a, b)] = z;
            j[(b, a)] = -z;
        }
        let sv = j.singular_values();
        let smax = sv.max();
        let ratio = if smax > 0.0 { sv.min() / smax } else { 0.0 };
        conditioning = Some(ratio);
        if ratio > PROBE_TOL {
            witness = Some(j);
        }
    }
    Ok(SymplecticProbe { solution_dimension: null.len(), witness, conditioning, abelian })
}

/// Per-block nonzero ratios, and for `{x, y}` control no equal magnitudes
/// across blocks.
pub fn ratio_guard(net: &SpinNetwork, partition: &GammaPartition) -> bool {
    if partition.ratios.iter().any(Zero::is_zero) {
        return false;
    }
    if net.control_axes.len() < 3 {
        let mut mags: Vec<_> = partition.ratios.iter().map(Signed::abs).collect();
        mags.sort();
        mags.dedup();
        return mags.len() == partition.ratios.len();
    }
    true
}

/// Closes the active controls alone and compares with the span of the
/// collective operators `i·Ĩ_jv` over blocks with nonzero ratio.
pub fn control_subalgebra_check(net: &SpinNetwork) -> Result<ControlSubalgebraCheck> {
    let partition = gamma_partition(net);
    let controls: Vec<_> = build_controls(net)?.into_values().collect();
    let dimension = match close(&controls, net.n, None) {
        Ok(c) => c,
        Err(Error::EmptyGenerators) => {
            return Ok(ControlSubalgebraCheck { dimension: 0, expected_dimension: None, passed: None });
        }
        Err(e) => return Err(e),
    };
    if !ratio_guard(net, &partition) {
        return Ok(ControlSubalgebraCheck { dimension: dimension.dimension, expected_dimension: None, passed: None });
    }
    let mut expected = EchelonBasis::new(net.n);
    for (block, ratio) in partition.blocks.iter().zip(&partition.ratios) {
        if ratio.is_zero() {
            continue;
        }
        for axis in Axis::ALL {
            expected.insert(&collective(net.n, block, axis)?)?;
        }
    }
    let passed = expected.same_span(&dimension.basis)?;
    Ok(ControlSubalgebraCheck {
        dimension: dimension.dimension,
        expected_dimension: Some(expected.dim()),
        passed: Some(passed),
    })
}

/// Predicted decomposition `L = ⊕ su(2^{n_j})` over graph components when
/// every ratio is distinct (and the ratio guard holds). `None` otherwise.
pub fn predicted_decomposition(net: &SpinNetwork) -> Option<Vec<usize>> {
    let partition = gamma_partition(net);
    if !partition.all_distinct() || !ratio_guard(net, &partition) {
        return None;
    }
    Some(component_dimensions(&connected_components(&build_graph(net))))
}

fn component_dimensions(components: &[Vec<usize>]) -> Vec<usize> {
    components.iter().map(|c| dimension_su(c.len())).collect()
}

fn one_based(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|k| k + 1).collect()).collect()
}

fn summarize(d: &DisintegrationResult) -> DisintegrationSummary {
    DisintegrationSummary {
        success: d.success,
        final_partition: one_based(&d.final_partition),
        passes: d.passes,
        splits: d.trace.len(),
    }
}

fn attach_cross_check(verdict: &mut Verdict, tag: VerdictTag, value: bool, failures: &mut Vec<String>, what: &str) {
    let agrees = verdict.value == Some(value);
    if !agrees {
        failures.push(format!("{what}: {} says {:?}, {tag} says {value}", verdict.tag, verdict.value));
    }
    verdict.cross_check = Some(CrossCheck { tag, value, agrees });
}

/// Full analysis of one network.
pub fn analyze(net: &SpinNetwork, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let mut net = net.clone();
    let mut notes = net.validate()?;
    let n = net.n;
    let full = dimension_su(n);

    if !net.control_axes.contains(&Axis::Z) {
        notes.push(
            "z control held constant: its drift contribution lies in the control subalgebra and is omitted".into(),
        );
    }

    let partition = gamma_partition(&net);
    let components = connected_components(&build_graph(&net));
    let connected = components.len() == 1;
    let guard = ratio_guard(&net, &partition);
    if !guard {
        notes.push("ratio guard fails: structural shortcuts are not applied".into());
    }
    let control_subalgebra = control_subalgebra_check(&net)?;

    let distinct = partition.all_distinct();
    let disintegration = (!distinct).then(|| disintegrate(&net));
    let distinct_shortcut = distinct && guard;
    let disintegration_shortcut = !distinct && guard && disintegration.as_ref().is_some_and(|d| d.success);

    let mut operator = Verdict::undetermined();
    let mut state = Verdict::undetermined();
    let mut decomposition = None;
    if distinct_shortcut {
        operator = Verdict::decided(connected, VerdictTag::DistinctRatioConnectivity);
        state = Verdict::decided(connected, VerdictTag::DistinctRatioConnectivity);
        decomposition = Some(component_dimensions(&components));
    } else if disintegration_shortcut {
        let tag =
            if connected { VerdictTag::DisintegrationConnectivity } else { VerdictTag::DisintegrationDecomposition };
        operator = Verdict::decided(connected, tag);
        state = if connected {
            Verdict::decided(true, VerdictTag::ImpliedByOperator)
        } else {
            Verdict::decided(false, tag)
        };
        decomposition = Some(component_dimensions(&components));
    }
    let predicted_dimension = decomposition.as_ref().map(|d: &Vec<usize>| d.iter().sum());

    let mut failures = Vec::new();
    if (distinct_shortcut || disintegration_shortcut) && control_subalgebra.passed == Some(false) {
        failures.push("control subalgebra does not match the collective-operator span".into());
    }

    let cap = options.cap;
    let mut closure = None;
    let mut closure_skipped = None;
    if cap.is_none() && n > UNCAPPED_MAX_SITES {
        closure_skipped =
            Some(format!("n = {n} exceeds {UNCAPPED_MAX_SITES}; pass an explicit cap to run the closure"));
    } else {
        match close(&generators(&net)?, n, cap) {
            Ok(c) => closure = Some(c),
            Err(Error::CapExceeded { cap }) => {
                closure_skipped = Some(format!("closure dimension exceeded the cap of {cap}"));
            }
            Err(e) => return Err(e),
        }
    }

    let mut centralizer = None;
    let mut center = None;
    let mut basis = None;
    if let Some(c) = &closure {
        let op = operator_verdict(c, n);
        let (st, cz) = state_verdict(&c.basis, n)?;
        centralizer = Some(cz);
        let op_value = op.value.expect("closure verdicts are decided");
        let st_value = st.value.expect("closure verdicts are decided");
        if operator.value.is_some() {
            attach_cross_check(
                &mut operator,
                VerdictTag::ClosureRank,
                op_value,
                &mut failures,
                "operator controllability",
            );
            attach_cross_check(
                &mut state,
                VerdictTag::CentralizerRank,
                st_value,
                &mut failures,
                "state controllability",
            );
        } else {
            operator = op;
            state = st;
        }
        if let Some(p) = predicted_dimension {
            if p != c.dimension {
                failures.push(format!("predicted dimension {p} but closure has dimension {}", c.dimension));
            }
        }
        if op_value && !st_value {
            failures.push("closure is full but the centralizer test rejects state controllability".into());
        }
        center = Some(if c.saturated_early { 0 } else { center_dimension(&c.basis)? });
        if options.include_basis {
            basis = Some(
                c.basis.rows().map(|r| r.terms().map(|(w, q)| (w.to_string(), format_rational(q))).collect()).collect(),
            );
        }
    }

    let mut symplectic = None;
    if let (Some(c), Some(true), Some(false)) = (&closure, state.value, operator.value) {
        if !options.skip_probe && n <= PROBE_MAX_SITES {
            let probe = symplectic_probe(&c.basis)?;
            if probe.abelian {
                notes.push("closure is abelian; the invariant-form witness is advisory only".into());
            }
            symplectic = Some(probe.summary());
        }
    }

    let equivalent = Verdict { value: state.value, tag: VerdictTag::MirrorsState, cross_check: None };

    Ok(AnalysisReport {
        n,
        control_axes: net.control_axes.iter().copied().collect(),
        full_dimension: full as u64,
        closure_dimension: closure.as_ref().map(|c| c.dimension),
        closure_skipped,
        bracket_count: closure.as_ref().map(|c| c.bracket_count),
        saturated_early: closure.as_ref().map(|c| c.saturated_early),
        operator_controllable: operator,
        state_controllable: state,
        equivalent_state_controllable: equivalent,
        centralizer_dimension: centralizer,
        center_dimension: center,
        gamma_blocks: one_based(&partition.blocks),
        graph_components: one_based(&components),
        ratio_guard: guard,
        distinct_ratio_shortcut_applicable: distinct_shortcut,
        disintegration_shortcut_applicable: disintegration_shortcut,
        disintegration: disintegration.as_ref().map(summarize),
        decomposition,
        predicted_dimension,
        control_subalgebra,
        symplectic_probe: symplectic,
        consistency_failures: failures,
        notes,
        basis,
    })
}
