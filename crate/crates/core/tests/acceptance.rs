//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;

use num_complex::Complex64;
use rand::Rng;

use common::*;
use spin_control::cases::{
    check_table, direct_sum, equal_coupling_spaces, f_rho_basis, f_rho_closed_under_products, f_rho_dimension, h_space,
    opposite_coupling_spaces, run_case, run_cases, select, CaseRow, EQUAL_COUPLING_TABLE, OPPOSITE_COUPLING_TABLE,
};
use spin_control::classify::{control_subalgebra_check, VerdictTag};
use spin_control::dense_oracle::{materialize_word, oracle_commutator, DenseOperator};
use spin_control::graph_analysis::{connected_components, disintegrate};
use spin_control::lie_closure::close;
use spin_control::pauli::{basis_commutator, bracket_elements, AlgebraElement, PauliWord, SiteSymbol};
use spin_control::rational::int;
use spin_control::spin_model::{build_controls, build_graph, gamma_partition, generators, tilde_i, Axis};
use spin_control::Result;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn single_case(
    id: &str,
    axes: Option<&[Axis]>,
) -> std::result::Result<(CaseRow, spin_control::AnalysisReport), String> {
    let case = lift(select(Some(id)))?.remove(0);
    let (row, report) = lift(run_case(&case, axes, false))?;
    ensure(row.passed(), format!("{id}: {}", row.failures.join("; ")))?;
    Ok((row, report))
}

fn summary(row: &CaseRow) -> String {
    format!(
        "{}: dim {}, operator {}, state {}",
        row.id,
        row.dimension.unwrap_or_default(),
        row.operator.unwrap_or_default(),
        row.state.unwrap_or_default()
    )
}

fn c1() -> Outcome {
    let (row, _) = single_case("n2-distinct", None)?;
    Ok(summary(&row))
}

fn c2() -> Outcome {
    let (row, report) = single_case("n2-equal", None)?;
    ensure(report.center_dimension == Some(1), "center is not one-dimensional")?;
    Ok(format!("{}, center 1", summary(&row)))
}

fn c3() -> Outcome {
    let (row, _) = single_case("a", None)?;
    Ok(summary(&row))
}

fn c4() -> Outcome {
    let (row, _) = single_case("b-ii-J12", None)?;
    Ok(summary(&row))
}

fn c5() -> Outcome {
    let (row, _) = single_case("b-ii-J12zero", None)?;
    Ok(summary(&row))
}

fn c6() -> Outcome {
    let (row, report) = single_case("b-iii-J12zero", None)?;
    let centralizer = report.centralizer_dimension.ok_or("no centralizer")?;
    ensure(36 - centralizer == 14, format!("36 - {centralizer} != 14"))?;
    let probe = report.symplectic_probe.ok_or("probe did not run")?;
    ensure(probe.witness_found, "no symplectic witness")?;
    Ok(format!(
        "{}, centralizer {centralizer}, witness conditioning {:.2e}",
        summary(&row),
        probe.conditioning.unwrap_or_default()
    ))
}

fn c7() -> Outcome {
    let (row, _) = single_case("b-iii-J12", None)?;
    Ok(summary(&row))
}

fn c8() -> Outcome {
    let (conn, report) = single_case("distinct-connected", None)?;
    ensure(report.operator_controllable.tag == VerdictTag::DistinctRatioConnectivity, "shortcut not used")?;
    ensure(report.operator_controllable.cross_check.as_ref().is_some_and(|c| c.agrees), "closure cross-check missing")?;
    let (disc, report) = single_case("distinct-disconnected", None)?;
    ensure(report.decomposition == Some(vec![15, 3]), format!("decomposition {:?}", report.decomposition))?;
    Ok(format!("{}; {} = 15 + 3", summary(&conn), summary(&disc)))
}

fn c9() -> Outcome {
    let mut r = rng(9);
    for trial in 0..50 {
        let n = r.random_range(1..=4);
        let net = random_network(&mut r, n, 0.5);
        let blocks = gamma_partition(&net).len();
        let check = lift(control_subalgebra_check(&net))?;
        ensure(check.dimension == 3 * blocks, format!("trial {trial}: dim {} vs 3·{blocks}", check.dimension))?;
        ensure(check.passed == Some(true), format!("trial {trial}: span differs from collective operators"))?;
        let b = lift(build_controls(&net))?;
        let partition = gamma_partition(&net);
        for (u, v, w) in [(Axis::X, Axis::Y, Axis::Z), (Axis::Y, Axis::Z, Axis::X), (Axis::Z, Axis::X, Axis::Y)] {
            let mut expected = AlgebraElement::zero(n);
            for (j, g) in partition.ratios.iter().enumerate() {
                let sq = -(g * g);
                expected = &expected + &(&sq * &lift(tilde_i(&net, j, w))?);
            }
            ensure(lift(bracket_elements(&b[&u], &b[&v]))? == expected, format!("trial {trial}: [B_{u},B_{v}]"))?;
        }
    }
    Ok("50 networks, dim 3r and squared-ratio brackets exact".into())
}

fn c10() -> Outcome {
    let mut r = rng(10);
    let mut found = 0;
    let mut split = 0;
    let mut draws = 0;
    while found < 50 {
        draws += 1;
        ensure(draws < 100_000, "could not draw enough qualifying networks")?;
        let mut net = random_network(&mut r, 3, 0.8);
        lift(net.validate())?;
        let d = disintegrate(&net);
        if !d.success || connected_components(&build_graph(&net)).len() != 1 {
            continue;
        }
        // Prefer networks that need an actual split, with some all-distinct ones mixed in.
        if d.trace.is_empty() && found >= 10 + split {
            continue;
        }
        let dim = lift(close(&lift(generators(&net))?, 3, None))?.dimension;
        ensure(dim == 63, format!("network {net:?} closes to {dim}"))?;
        found += 1;
        if !d.trace.is_empty() {
            split += 1;
        }
    }
    Ok(format!("50 networks ({split} needing splits), all dim 63"))
}

fn symbols(n: usize, bits: u64) -> PauliWord {
    let s: Vec<SiteSymbol> = (0..n).map(|k| SiteSymbol::ALL[(bits >> (2 * k) & 3) as usize]).collect();
    PauliWord::from_symbols(&s).unwrap()
}

fn dense_bracket(p: &PauliWord, q: &PauliWord) -> DenseOperator {
    oracle_commutator(&materialize_word(p).unwrap(), &materialize_word(q).unwrap()).unwrap()
}

fn levi_civita(a: SiteSymbol, b: SiteSymbol) -> Option<(i64, SiteSymbol)> {
    use SiteSymbol::*;
    match (a, b) {
        (X, Y) => Some((1, Z)),
        (Y, Z) => Some((1, X)),
        (Z, X) => Some((1, Y)),
        (Y, X) => Some((-1, Z)),
        (Z, Y) => Some((-1, X)),
        (X, Z) => Some((-1, Y)),
        _ => None,
    }
}

/// Disjoint supports commute, exactly and densely.
fn property1(p: &PauliWord, q: &PauliWord) -> std::result::Result<(), String> {
    ensure(lift(basis_commutator(p, q))?.is_none(), format!("[{p},{q}] nonzero"))?;
    ensure(dense_bracket(p, q).max_abs() == 0.0, format!("dense [{p},{q}] nonzero"))
}

/// Commutator with a single-site word on the support of `p`.
fn property2(p: &PauliWord, site: usize, m: SiteSymbol) -> std::result::Result<(), String> {
    let n = p.len();
    let q = PauliWord::with_sites(n, &[(site, m)]).unwrap();
    let exact = lift(basis_commutator(p, &q))?;
    let dense = dense_bracket(p, &q);
    match levi_civita(p.get(site), m) {
        None => {
            ensure(exact.is_none(), format!("[{p},{q}] should vanish"))?;
            ensure(dense.max_abs() == 0.0, format!("dense [{p},{q}] should vanish"))
        }
        Some((sign, tau)) => {
            let target = p.with(site, tau);
            // [P, σ] = ±i·P' for operators, so [iP, iσ] = ∓ i·P'.
            ensure(exact == Some((int(-sign), target)), format!("[{p},{q}] = {exact:?}"))?;
            let expected = materialize_word(&target).unwrap().scaled(Complex64::new(0.0, sign as f64));
            ensure(dense.max_abs_diff(&expected) < 1e-15, format!("dense [{p},{q}]"))
        }
    }
}

fn commutator_properties() -> std::result::Result<usize, String> {
    let mut checked = 0;
    let n = 2;
    for a in 1..16u64 {
        for b in 1..16u64 {
            let (p, q) = (symbols(n, a), symbols(n, b));
            if p.support().iter().all(|k| !q.support().contains(k)) {
                property1(&p, &q)?;
                checked += 1;
            }
        }
        let p = symbols(n, a);
        for site in p.support() {
            for m in SiteSymbol::PAULIS {
                property2(&p, site, m)?;
                checked += 1;
            }
        }
    }
    let mut r = rng(11);
    let n = 3;
    for _ in 0..500 {
        // Property 1 on a random split of the sites.
        let mask: u64 = r.random_range(1..7);
        let draw = |r: &mut rand_chacha::ChaCha8Rng, sites: u64| -> PauliWord {
            let syms: Vec<(usize, SiteSymbol)> =
                (0..n).filter(|k| sites >> k & 1 == 1).map(|k| (k, SiteSymbol::PAULIS[r.random_range(0..3)])).collect();
            PauliWord::with_sites(n, &syms).unwrap()
        };
        let p = draw(&mut r, mask);
        let q = draw(&mut r, !mask & 7);
        if !q.is_identity() {
            property1(&p, &q)?;
        }
        let site = p.support()[r.random_range(0..p.support().len())];
        property2(&p, site, SiteSymbol::PAULIS[r.random_range(0..3)])?;
        checked += 2;
    }
    Ok(checked)
}

fn symmetrization_checks() -> std::result::Result<(), String> {
    ensure(f_rho_dimension() == 10, "dim F_rho != 10")?;
    ensure(lift(f_rho_closed_under_products())?, "F_rho not closed under products")?;
    // Dense cross-check: products of basis elements commute with the swap.
    let mut swap = nalgebra::DMatrix::<Complex64>::zeros(4, 4);
    for (a, b) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        swap[(a, b)] = Complex64::new(1.0, 0.0);
    }
    let dense = |f: &Vec<PauliWord>| {
        f.iter().fold(nalgebra::DMatrix::<Complex64>::zeros(4, 4), |acc, w| acc + materialize_word(w).unwrap().matrix())
    };
    let basis = f_rho_basis();
    for a in &basis {
        for b in &basis {
            let prod = dense(a) * dense(b);
            let swapped = &swap * &prod * &swap;
            ensure((swapped - prod).iter().all(|z| z.norm() < 1e-15), "dense product not swap invariant")?;
        }
    }
    Ok(())
}

fn subspace_checks() -> std::result::Result<usize, String> {
    let eq = lift(equal_coupling_spaces())?;
    let op = lift(opposite_coupling_spaces())?;
    let mut count = 0;
    for check in lift(check_table(&eq, &EQUAL_COUPLING_TABLE))?
        .into_iter()
        .chain(lift(check_table(&op, &OPPOSITE_COUPLING_TABLE))?)
    {
        ensure(check.holds, format!("{} fails, smallest target {:?}", check.relation, check.smallest_target))?;
        count += 1;
    }

    let h = lift(h_space())?;
    ensure(h.dim() == 39, "dim H != 39")?;
    let closure = |id: &str| -> std::result::Result<spin_control::EchelonBasis, String> {
        let case = lift(select(Some(id)))?.remove(0);
        Ok(lift(close(&lift(generators(&case.network))?, 3, None))?.basis)
    };
    let l39 = closure("b-ii-J12")?;
    let l38 = closure("b-ii-J12zero")?;
    let l36 = closure("b-iii-J12zero")?;
    ensure(lift(l39.same_span(&h))?, "L != H for J12 != 0")?;
    ensure(l38.rows().all(|r| h.contains(&r).unwrap_or(false)), "L not inside H for J12 = 0")?;
    ensure(lift(l38.same_span(&lift(direct_sum(&eq, "CMNQR"))?))?, "L != C+M+N+Q+R")?;
    ensure(lift(l36.same_span(&lift(direct_sum(&op, "CMNR"))?))?, "L != C+M+N+R for J13 = -J23")?;
    Ok(count)
}

fn c11() -> Outcome {
    let a = commutator_properties()?;
    symmetrization_checks()?;
    let c = subspace_checks()?;
    Ok(format!("{a} commutator properties, F_rho dim 10 and product-closed, {c} subspace inclusions"))
}

fn c12() -> Outcome {
    let xy = [Axis::X, Axis::Y];
    let full = lift(run_cases(None, false, None))?;
    let rdm = lift(run_cases(None, false, Some(&xy)))?;
    for (a, b) in full.iter().zip(&rdm) {
        ensure(b.passed(), format!("{} with x,y: {}", b.id, b.failures.join("; ")))?;
        ensure(a.dimension == b.dimension, format!("{}: {:?} vs {:?}", a.id, a.dimension, b.dimension))?;
    }
    Ok(format!("{} cases with axes x,y, identical dimensions", rdm.len()))
}

fn c13() -> Outcome {
    let xy = [Axis::X, Axis::Y];
    let mut worst: f64 = 0.0;
    let mut rows = lift(run_cases(None, true, None))?;
    rows.extend(lift(run_cases(None, true, Some(&xy)))?);
    for row in &rows {
        let oracle = row.oracle.as_ref().ok_or("oracle did not run")?;
        ensure(row.passed(), format!("{}: {}", row.id, row.failures.join("; ")))?;
        ensure(Some(oracle.dimension) == row.dimension, format!("{}: oracle dimension", row.id))?;
        worst = worst.max(oracle.max_bracket_error);
    }
    ensure(worst < 1e-12, format!("bracket error {worst:e}"))?;
    Ok(format!("{} runs agree, max bracket error {worst:.1e}", rows.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("two spins, distinct ratios", c1),
        ("two spins, equal ratios", c2),
        ("three equal ratios", c3),
        ("J13 = J23, J12 != 0", c4),
        ("J13 = J23, J12 = 0", c5),
        ("J13 = -J23, J12 = 0", c6),
        ("J13 = -J23, J12 != 0", c7),
        ("distinct ratios, connected and disconnected", c8),
        ("control subalgebra suite", c9),
        ("disintegration soundness", c10),
        ("commutator, symmetrization and subspace suites", c11),
        ("x,y control variant", c12),
        ("dense oracle concordance", c13),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
