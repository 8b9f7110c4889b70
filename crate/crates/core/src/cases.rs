//! Built-in library of reference networks with known closures, and the
//! subspace decompositions of the three-spin equal-ratio algebras.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;

use crate::classify::{analyze, AnalysisOptions, AnalysisReport};
use crate::dense_oracle::{materialize, numeric_closure_dim, oracle_commutator, RANK_TOL};
use crate::lie_closure::close;
use crate::operator_space::{exact_rank, first_escaping_bracket, EchelonBasis};
use crate::pauli::{bracket_elements, word_product, AlgebraElement, PauliWord, SiteSymbol};
use crate::rational::{int, Rational};
use crate::spin_model::{generators, Axis, CouplingTriple, SpinNetwork};
use crate::{Error, Result};

/// Bracket pairs checked against the dense oracle per case.
const ORACLE_PAIR_ROWS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub dimension: usize,
    pub operator: bool,
    pub state: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<usize>,
    /// Structural prediction from the graph shortcuts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symplectic_witness: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ReferenceCase {
    pub id: &'static str,
    pub summary: &'static str,
    pub network: SpinNetwork,
    pub expected: Expected,
}

fn heisenberg(gamma: &[i64], pairs: &[(usize, usize, i64)]) -> SpinNetwork {
    let mut net = SpinNetwork::new(gamma.iter().map(|&g| int(g)).collect());
    for &(k, l, j) in pairs {
        net = net.with_coupling(k, l, CouplingTriple::heisenberg(int(j)));
    }
    net
}

fn expect(dimension: usize, operator: bool, state: bool) -> Expected {
    Expected { dimension, operator, state, center: None, predicted: None, symplectic_witness: None }
}

/// All reference networks. Indices in the networks are 0-based; particles
/// 1 and 2 share a ratio in the `b-*` cases and particle 3 differs.
pub fn library() -> Vec<ReferenceCase> {
    vec![
        ReferenceCase {
            id: "n2-distinct",
            summary: "two spins, distinct ratios, Heisenberg",
            network: heisenberg(&[1, 2], &[(0, 1, 1)]),
            expected: Expected { predicted: Some(15), ..expect(15, true, true) },
        },
        ReferenceCase {
            id: "n2-equal",
            summary: "two spins, equal ratios, Heisenberg",
            network: heisenberg(&[1, 1], &[(0, 1, 1)]),
            expected: Expected { center: Some(1), ..expect(4, false, false) },
        },
        ReferenceCase {
            id: "a",
            summary: "three equal ratios, connected Heisenberg",
            network: heisenberg(&[1, 1, 1], &[(0, 1, 1), (0, 2, 2), (1, 2, 1)]),
            expected: Expected { center: Some(1), ..expect(4, false, false) },
        },
        ReferenceCase {
            id: "b-i",
            summary: "g1 = g2 != g3, |J13| != |J23|",
            network: heisenberg(&[1, 1, 2], &[(0, 2, 1), (1, 2, 2)]),
            expected: Expected { predicted: Some(63), ..expect(63, true, true) },
        },
        ReferenceCase {
            id: "b-ii-J12",
            summary: "g1 = g2 != g3, J13 = J23, J12 != 0",
            network: heisenberg(&[1, 1, 2], &[(0, 1, 1), (0, 2, 1), (1, 2, 1)]),
            expected: expect(39, false, false),
        },
        ReferenceCase {
            id: "b-ii-J12zero",
            summary: "g1 = g2 != g3, J13 = J23, J12 = 0",
            network: heisenberg(&[1, 1, 2], &[(0, 2, 1), (1, 2, 1)]),
            expected: expect(38, false, false),
        },
        ReferenceCase {
            id: "b-iii-J12zero",
            summary: "g1 = g2 != g3, J13 = -J23, J12 = 0",
            network: heisenberg(&[1, 1, 2], &[(0, 2, 1), (1, 2, -1)]),
            expected: Expected { symplectic_witness: Some(true), ..expect(36, false, true) },
        },
        ReferenceCase {
            id: "b-iii-J12",
            summary: "g1 = g2 != g3, J13 = -J23, J12 != 0",
            network: heisenberg(&[1, 1, 2], &[(0, 1, 1), (0, 2, 1), (1, 2, -1)]),
            expected: expect(63, true, true),
        },
        ReferenceCase {
            id: "distinct-connected",
            summary: "three distinct ratios, path 1-2-3",
            network: heisenberg(&[1, 2, 3], &[(0, 1, 1), (1, 2, 1)]),
            expected: Expected { predicted: Some(63), ..expect(63, true, true) },
        },
        ReferenceCase {
            id: "distinct-disconnected",
            summary: "three distinct ratios, edge 1-2 only",
            network: heisenberg(&[1, 2, 3], &[(0, 1, 1)]),
            expected: Expected { predicted: Some(18), ..expect(18, false, false) },
        },
    ]
}

/// Cases matching `selector` (all of them for `None`).
pub fn select(selector: Option<&str>) -> Result<Vec<ReferenceCase>> {
    let all = library();
    match selector {
        None | Some("all") => Ok(all),
        Some(id) => {
            let picked: Vec<_> = all.into_iter().filter(|c| c.id == id).collect();
            if picked.is_empty() {
                Err(Error::UnknownCase(id.to_string()))
            } else {
                Ok(picked)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub dimension: usize,
    pub near_threshold: usize,
    /// Largest entrywise deviation between exact and dense brackets.
    pub max_bracket_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseRow {
    pub id: String,
    pub axes: String,
    pub expected: Expected,
    pub dimension: Option<usize>,
    pub operator: Option<bool>,
    pub state: Option<bool>,
    pub center: Option<usize>,
    pub predicted: Option<usize>,
    pub symplectic_witness: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    pub failures: Vec<String>,
}

impl CaseRow {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exact versus dense closure and brackets.
pub fn oracle_check(net: &SpinNetwork, basis: &EchelonBasis) -> Result<OracleCheck> {
    let gens = generators(net)?;
    let dense = gens.iter().map(materialize).collect::<Result<Vec<_>>>()?;
    let numeric = numeric_closure_dim(&dense, RANK_TOL)?;
    let mut sample: Vec<AlgebraElement> = gens;
    sample.extend(basis.rows().take(ORACLE_PAIR_ROWS));
    let mut max_err: f64 = 0.0;
    for a in &sample {
        let da = materialize(a)?;
        for b in &sample {
            let exact = materialize(&bracket_elements(a, b)?)?;
            let numeric = oracle_commutator(&da, &materialize(b)?)?;
            max_err = max_err.max(exact.max_abs_diff(&numeric));
        }
    }
    Ok(OracleCheck { dimension: numeric.dimension, near_threshold: numeric.near_threshold, max_bracket_error: max_err })
}

fn compare<T: PartialEq + std::fmt::Debug>(
    failures: &mut Vec<String>,
    what: &str,
    expected: Option<T>,
    got: Option<T>,
) {
    if let Some(e) = expected {
        if got.as_ref() != Some(&e) {
            failures.push(format!("{what}: expected {e:?}, got {got:?}"));
        }
    }
}

/// Runs one case, optionally with a restricted axis set and the dense oracle.
pub fn run_case(case: &ReferenceCase, axes: Option<&[Axis]>, oracle: bool) -> Result<(CaseRow, AnalysisReport)> {
    let mut net = case.network.clone();
    if let Some(axes) = axes {
        net = net.with_axes(axes.iter().copied());
    }
    let report = analyze(&net, &AnalysisOptions::default())?;
    let e = &case.expected;
    let mut failures = report.consistency_failures.clone();
    compare(&mut failures, "dimension", Some(e.dimension), report.closure_dimension);
    compare(&mut failures, "operator", Some(e.operator), report.operator_controllable.value);
    compare(&mut failures, "state", Some(e.state), report.state_controllable.value);
    compare(&mut failures, "center", e.center, report.center_dimension);
    compare(&mut failures, "predicted", e.predicted, report.predicted_dimension);
    let witness = report.symplectic_probe.as_ref().map(|p| p.witness_found);
    compare(&mut failures, "symplectic witness", e.symplectic_witness, witness);

    let mut oracle_row = None;
    if oracle {
        net.validate()?;
        let closure = close(&generators(&net)?, net.n, None)?;
        let check = oracle_check(&net, &closure.basis)?;
        if check.dimension != closure.dimension {
            failures.push(format!("oracle dimension {} vs exact {}", check.dimension, closure.dimension));
        }
        if check.max_bracket_error >= 1e-12 {
            failures.push(format!("oracle bracket error {:.3e}", check.max_bracket_error));
        }
        oracle_row = Some(check);
    }

    let row = CaseRow {
        id: case.id.to_string(),
        axes: net.control_axes.iter().map(Axis::to_string).collect::<Vec<_>>().join(","),
        expected: e.clone(),
        dimension: report.closure_dimension,
        operator: report.operator_controllable.value,
        state: report.state_controllable.value,
        center: report.center_dimension,
        predicted: report.predicted_dimension,
        symplectic_witness: witness,
        oracle: oracle_row,
        failures,
    };
    Ok((row, report))
}

pub fn run_cases(selector: Option<&str>, oracle: bool, axes: Option<&[Axis]>) -> Result<Vec<CaseRow>> {
    select(selector)?.iter().map(|c| run_case(c, axes, oracle).map(|(row, _)| row)).collect()
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

/// Aligned text table, one line per row.
pub fn format_table(rows: &[CaseRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<22} {:<6} {:>8} {:>8} {:>9} {:>9} {:>7} {:>7}  result",
        "case", "axes", "exp dim", "dim", "operator", "state", "center", "oracle"
    );
    for r in rows {
        let oracle = r.oracle.as_ref().map(|o| o.dimension);
        let _ = writeln!(
            out,
            "{:<22} {:<6} {:>8} {:>8} {:>9} {:>9} {:>7} {:>7}  {}",
            r.id,
            r.axes,
            r.expected.dimension,
            opt(&r.dimension),
            opt(&r.operator),
            opt(&r.state),
            opt(&r.center),
            opt(&oracle),
            if r.passed() { "PASS".to_string() } else { format!("FAIL {}", r.failures.join("; ")) }
        );
    }
    out
}

// Three-spin subspaces. Sites 0 and 1 share a ratio; site 2 is the odd one.

const V: [SiteSymbol; 3] = SiteSymbol::PAULIS;

fn signed_sum(n: usize, terms: &[(&[(usize, SiteSymbol)], i64)]) -> Result<AlgebraElement> {
    let mut e = AlgebraElement::zero(n);
    for (sites, sign) in terms {
        e.add_term(PauliWord::with_sites(n, sites)?, int(*sign))?;
    }
    Ok(e)
}

fn span(elements: Vec<AlgebraElement>) -> Result<EchelonBasis> {
    EchelonBasis::spanning(3, &elements)
}

/// `i(σ_v¹ + σ_v²)` and `iσ_w³`.
pub fn subspace_c() -> Result<EchelonBasis> {
    let mut out = Vec::new();
    for v in V {
        out.push(signed_sum(3, &[(&[(0, v)], 1), (&[(1, v)], 1)])?);
        out.push(signed_sum(3, &[(&[(2, v)], 1)])?);
    }
    span(out)
}

/// `i(σ_v¹σ_w³ ± σ_v²σ_w³)`.
pub fn subspace_m(sign: i64) -> Result<EchelonBasis> {
    let mut out = Vec::new();
    for v in V {
        for w in V {
            out.push(signed_sum(3, &[(&[(0, v), (2, w)], 1), (&[(1, v), (2, w)], sign)])?);
        }
    }
    span(out)
}

/// `i(σ_v¹σ_w²σ_p³ + σ_w¹σ_v²σ_p³)`.
pub fn subspace_n() -> Result<EchelonBasis> {
    let mut out = Vec::new();
    for v in V {
        for w in V {
            for p in V {
                out.push(signed_sum(3, &[(&[(0, v), (1, w), (2, p)], 1), (&[(0, w), (1, v), (2, p)], 1)])?);
            }
        }
    }
    span(out)
}

/// `i(σ_v¹σ_w² ± σ_w¹σ_v²)` for `v ≠ w`.
pub fn subspace_q(sign: i64) -> Result<EchelonBasis> {
    let mut out = Vec::new();
    for (a, v) in V.iter().enumerate() {
        for w in &V[a + 1..] {
            out.push(signed_sum(3, &[(&[(0, *v), (1, *w)], 1), (&[(0, *w), (1, *v)], sign)])?);
        }
    }
    span(out)
}

/// `i(σ_x¹σ_x² − σ_y¹σ_y²)`, `i(σ_x¹σ_x² − σ_z¹σ_z²)`.
pub fn subspace_r() -> Result<EchelonBasis> {
    use SiteSymbol::{X, Y, Z};
    span(vec![
        signed_sum(3, &[(&[(0, X), (1, X)], 1), (&[(0, Y), (1, Y)], -1)])?,
        signed_sum(3, &[(&[(0, X), (1, X)], 1), (&[(0, Z), (1, Z)], -1)])?,
    ])
}

/// A named subspace of the equal-coupling decomposition.
#[derive(Clone, Debug)]
pub struct NamedSpace {
    pub name: &'static str,
    pub basis: EchelonBasis,
}

/// `C̃, M, N, Q, R` for `J13 = J23`.
pub fn equal_coupling_spaces() -> Result<Vec<NamedSpace>> {
    Ok(vec![
        NamedSpace { name: "C", basis: subspace_c()? },
        NamedSpace { name: "M", basis: subspace_m(1)? },
        NamedSpace { name: "N", basis: subspace_n()? },
        NamedSpace { name: "Q", basis: subspace_q(1)? },
        NamedSpace { name: "R", basis: subspace_r()? },
    ])
}

/// `C̃, M₋, N, R₋` for `J13 = −J23`.
pub fn opposite_coupling_spaces() -> Result<Vec<NamedSpace>> {
    Ok(vec![
        NamedSpace { name: "C", basis: subspace_c()? },
        NamedSpace { name: "M", basis: subspace_m(-1)? },
        NamedSpace { name: "N", basis: subspace_n()? },
        NamedSpace { name: "R", basis: subspace_q(-1)? },
    ])
}

/// Sum of the named spaces.
pub fn direct_sum(spaces: &[NamedSpace], names: &str) -> Result<EchelonBasis> {
    let mut out = EchelonBasis::new(3);
    for ch in names.chars() {
        let space = spaces.iter().find(|s| s.name.starts_with(ch)).ok_or_else(|| Error::UnknownCase(ch.to_string()))?;
        out = out.sum(&space.basis)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionCheck {
    /// `"[U,V] ⊆ W"` with `U`, `V`, `W` written as concatenated space names.
    pub relation: String,
    pub holds: bool,
    /// Smallest sum of named spaces that does contain the brackets.
    pub smallest_target: Option<String>,
}

/// Checks `[U, V] ⊆ W` where each argument is a string of space names and
/// `"0"` denotes the zero space.
pub fn check_inclusion(spaces: &[NamedSpace], u: &str, v: &str, w: &str) -> Result<InclusionCheck> {
    let bu = direct_sum(spaces, u)?;
    let bv = direct_sum(spaces, v)?;
    let target = if w == "0" { EchelonBasis::new(3) } else { direct_sum(spaces, w)? };
    let holds = first_escaping_bracket(&bu, &bv, &target)?.is_none();
    let smallest_target = if holds { Some(w.to_string()) } else { smallest_containing(spaces, &bu, &bv)? };
    Ok(InclusionCheck { relation: format!("[{u},{v}] <= {w}"), holds, smallest_target })
}

fn smallest_containing(spaces: &[NamedSpace], u: &EchelonBasis, v: &EchelonBasis) -> Result<Option<String>> {
    let k = spaces.len();
    let mut masks: Vec<u32> = (0..1u32 << k).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let names: String = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| &spaces[i].name[..1]).collect();
        let target = if names.is_empty() { EchelonBasis::new(3) } else { direct_sum(spaces, &names)? };
        if first_escaping_bracket(u, v, &target)?.is_none() {
            return Ok(Some(if names.is_empty() { "0".into() } else { names }));
        }
    }
    Ok(None)
}

/// The commutation table for `J13 = J23` as `(U, V, W)`.
///
/// The collective rotations of particles 1 and 2 keep `Q` inside the
/// two-site symmetric operators, so `[C̃, Q]` lands in `Q ⊕ R` rather than
/// `N ⊕ R` as sometimes stated.
pub const EQUAL_COUPLING_TABLE: [(&str, &str, &str); 15] = [
    ("C", "C", "C"),
    ("C", "M", "M"),
    ("C", "N", "N"),
    ("C", "Q", "QR"),
    ("C", "R", "Q"),
    ("M", "M", "CMN"),
    ("M", "N", "MQR"),
    ("M", "Q", "N"),
    ("M", "R", "N"),
    ("N", "N", "CN"),
    ("N", "Q", "CM"),
    ("N", "R", "M"),
    ("Q", "Q", "C"),
    ("Q", "R", "C"),
    ("R", "R", "0"),
];

/// Cartan-type inclusions for `J13 = −J23`.
pub const OPPOSITE_COUPLING_TABLE: [(&str, &str, &str); 3] =
    [("CN", "CN", "CN"), ("CN", "MR", "MR"), ("MR", "MR", "CN")];

pub fn check_table(spaces: &[NamedSpace], table: &[(&str, &str, &str)]) -> Result<Vec<InclusionCheck>> {
    table.iter().map(|(u, v, w)| check_inclusion(spaces, u, v, w)).collect()
}

// Two-site symmetrization, including the identity component.

type ComplexCoords = BTreeMap<PauliWord, (Rational, Rational)>;

fn swap(w: &PauliWord) -> PauliWord {
    w.permuted(&[1, 0])
}

/// `σ_l⊗σ_v + σ_v⊗σ_l` for `l ≤ v` over `{I, x, y, z}`: a basis of the
/// swap-invariant two-site operators.
pub fn f_rho_basis() -> Vec<Vec<PauliWord>> {
    let all = SiteSymbol::ALL;
    let mut out = Vec::new();
    for (a, &l) in all.iter().enumerate() {
        for &v in &all[a..] {
            let w = PauliWord::from_symbols(&[l, v]).expect("two sites");
            if l == v {
                out.push(vec![w]);
            } else {
                out.push(vec![w, swap(&w)]);
            }
        }
    }
    out
}

/// Dimension of the fixed space of `ρ`, computed as the rank of its image
/// on all sixteen words (`ρ` is idempotent).
pub fn f_rho_dimension() -> usize {
    let half = Rational::new(1.into(), 2.into());
    let images = (0u64..16).map(|bits| {
        let w = PauliWord::from_symbols(&[SiteSymbol::ALL[(bits >> 2) as usize], SiteSymbol::ALL[(bits & 3) as usize]])
            .expect("two sites");
        let mut row = BTreeMap::new();
        *row.entry(w).or_insert_with(Rational::zero) += &half;
        *row.entry(swap(&w)).or_insert_with(Rational::zero) += &half;
        row
    });
    exact_rank(images)
}

/// Products of any two `F_ρ` basis elements are swap-invariant.
pub fn f_rho_closed_under_products() -> Result<bool> {
    let basis = f_rho_basis();
    for a in &basis {
        for b in &basis {
            let mut prod: ComplexCoords = BTreeMap::new();
            for p in a {
                for q in b {
                    let (coef, w) = word_product(p, q)?;
                    let (re, im) = coef.parts();
                    let entry = prod.entry(w).or_insert_with(|| (Rational::zero(), Rational::zero()));
                    entry.0 += re;
                    entry.1 += im;
                }
            }
            let zero = (Rational::zero(), Rational::zero());
            for (w, c) in &prod {
                if prod.get(&swap(w)).unwrap_or(&zero) != c {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `H = {F ⊗ σ_j : F ∈ F_ρ} ∖ {identity}` as a subspace of `su(8)`.
pub fn h_space() -> Result<EchelonBasis> {
    let mut out = Vec::new();
    for f in f_rho_basis() {
        for s in SiteSymbol::ALL {
            let mut e = AlgebraElement::zero(3);
            for w in &f {
                let full = PauliWord::from_symbols(&[w.get(0), w.get(1), s])?;
                if !full.is_identity() {
                    e.add_term(full, int(1))?;
                }
            }
            if !e.is_zero() {
                out.push(e);
            }
        }
    }
    span(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!(select(None).unwrap().len(), 10);
        assert_eq!(select(Some("b-iii-J12zero")).unwrap()[0].expected.dimension, 36);
        assert!(matches!(select(Some("nope")), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn subspace_dimensions() {
        let eq = equal_coupling_spaces().unwrap();
        let dims: Vec<_> = eq.iter().map(|s| s.basis.dim()).collect();
        assert_eq!(dims, vec![6, 9, 18, 3, 2]);
        assert_eq!(direct_sum(&eq, "CMNQR").unwrap().dim(), 38);
        let op = opposite_coupling_spaces().unwrap();
        assert_eq!(direct_sum(&op, "CMNR").unwrap().dim(), 36);
    }

    #[test]
    fn rotations_keep_q_two_site() {
        let eq = equal_coupling_spaces().unwrap();
        let claimed = check_inclusion(&eq, "C", "Q", "NR").unwrap();
        assert!(!claimed.holds);
        assert_eq!(claimed.smallest_target.as_deref(), Some("QR"));
        assert!(check_table(&eq, &EQUAL_COUPLING_TABLE).unwrap().iter().all(|c| c.holds));
    }

    #[test]
    fn symmetrization_space() {
        assert_eq!(f_rho_basis().len(), 10);
        assert_eq!(f_rho_dimension(), 10);
        assert!(f_rho_closed_under_products().unwrap());
        assert_eq!(h_space().unwrap().dim(), 39);
    }
}
