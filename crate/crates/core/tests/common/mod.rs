#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spin_control::pauli::{AlgebraElement, PauliWord, SiteSymbol};
use spin_control::rational::{int, ratio, Rational};
use spin_control::spin_model::{Axis, CouplingTriple, SpinNetwork};

pub fn word_strategy(n: usize) -> impl Strategy<Value = PauliWord> {
    prop::collection::vec(0usize..4, n).prop_map(|codes| {
        PauliWord::from_symbols(&codes.iter().map(|&c| SiteSymbol::ALL[c]).collect::<Vec<_>>()).unwrap()
    })
}

pub fn nonidentity_word(n: usize) -> impl Strategy<Value = PauliWord> {
    word_strategy(n).prop_filter("identity", |w| !w.is_identity())
}

pub fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

pub fn element_strategy(n: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((nonidentity_word(n), rational_strategy()), 1..5)
        .prop_map(move |terms| AlgebraElement::from_terms(n, terms).unwrap())
}

/// Random network: nonzero rational ratios drawn from a small
/// pool so that equal ratios occur, random anisotropic couplings.
pub fn random_network(rng: &mut ChaCha8Rng, n: usize, edge_prob: f64) -> SpinNetwork {
    let pool = [ratio(1, 1), ratio(2, 1), ratio(1, 2), ratio(3, 1), ratio(-5, 3)];
    let gamma = (0..n).map(|_| pool[rng.random_range(0..pool.len())].clone()).collect();
    let mut net = SpinNetwork::new(gamma);
    for k in 0..n {
        for l in k + 1..n {
            if rng.random_bool(edge_prob) {
                let mut c = || ratio(rng.random_range(-3..=3), rng.random_range(1..=3));
                let t = CouplingTriple::new(c(), c(), c());
                if !t.is_zero() {
                    net = net.with_coupling(k, l, t);
                }
            }
        }
    }
    net
}

/// Network with pairwise distinct ratios.
pub fn random_distinct_network(rng: &mut ChaCha8Rng, n: usize, edge_prob: f64) -> SpinNetwork {
    let mut net = random_network(rng, n, edge_prob);
    let den = rng.random_range(1..=3);
    net.gamma = (0..n).map(|k| ratio(k as i64 + 1, den)).collect();
    net
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn heisenberg(gamma: &[i64], pairs: &[(usize, usize, i64)]) -> SpinNetwork {
    let mut net = SpinNetwork::new(gamma.iter().map(|&g| int(g)).collect());
    for &(k, l, j) in pairs {
        net = net.with_coupling(k, l, CouplingTriple::heisenberg(int(j)));
    }
    net
}

pub fn xy(net: SpinNetwork) -> SpinNetwork {
    net.with_axes([Axis::X, Axis::Y])
}
