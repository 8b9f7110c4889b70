//! Spin-network description and the drift/control operators it induces.
//!
//! Particle indices are zero-based in this API; configuration files and
//! error messages use one-based indices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use log::warn;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::graph_analysis::InteractionGraph;
use crate::pauli::{AlgebraElement, PauliWord, SiteSymbol, MAX_SITES};
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn symbol(self) -> SiteSymbol {
        match self {
            Axis::X => SiteSymbol::X,
            Axis::Y => SiteSymbol::Y,
            Axis::Z => SiteSymbol::Z,
        }
    }

    pub fn parse(s: &str) -> Option<Axis> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Some(Axis::X),
            "y" => Some(Axis::Y),
            "z" => Some(Axis::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        };
        f.write_str(c)
    }
}

/// Coupling constants `(M, N, P)` on the `σ_x⊗σ_x`, `σ_y⊗σ_y` and
/// `σ_z⊗σ_z` interactions of one pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CouplingTriple {
    pub m: Rational,
    pub n: Rational,
    pub p: Rational,
}

impl CouplingTriple {
    pub fn new(m: Rational, n: Rational, p: Rational) -> Self {
        CouplingTriple { m, n, p }
    }

    /// Heisenberg coupling `M = N = P = J`.
    pub fn heisenberg(j: Rational) -> Self {
        CouplingTriple { m: j.clone(), n: j.clone(), p: j }
    }

    pub fn zero() -> Self {
        Self::heisenberg(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero() && self.n.is_zero() && self.p.is_zero()
    }

    /// `{|M|, |N|, |P|}` as a sorted multiset.
    pub fn abs_multiset(&self) -> [Rational; 3] {
        let mut v = [self.m.abs(), self.n.abs(), self.p.abs()];
        v.sort();
        v
    }

    fn component(&self, axis: Axis) -> &Rational {
        match axis {
            Axis::X => &self.m,
            Axis::Y => &self.n,
            Axis::Z => &self.p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coupling {
    pub k: usize,
    pub l: usize,
    pub triple: CouplingTriple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinNetwork {
    pub n: usize,
    pub gamma: Vec<Rational>,
    pub couplings: Vec<Coupling>,
    pub control_axes: BTreeSet<Axis>,
}

/// Particles grouped by equal gyromagnetic ratio, in order of first occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPartition {
    pub blocks: Vec<Vec<usize>>,
    pub ratios: Vec<Rational>,
}

impl GammaPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn all_distinct(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }
}

impl SpinNetwork {
    /// Network with all three control axes and no couplings.
    pub fn new(gamma: Vec<Rational>) -> Self {
        SpinNetwork { n: gamma.len(), gamma, couplings: Vec::new(), control_axes: Axis::ALL.into_iter().collect() }
    }

    pub fn with_coupling(mut self, k: usize, l: usize, triple: CouplingTriple) -> Self {
        self.couplings.push(Coupling { k, l, triple });
        self
    }

    pub fn with_axes(mut self, axes: impl IntoIterator<Item = Axis>) -> Self {
        self.control_axes = axes.into_iter().collect();
        self
    }

    /// Checks the network invariants and drops all-zero coupling triples.
    /// Returns the normalization warnings.
    pub fn validate(&mut self) -> Result<Vec<String>> {
        if self.n == 0 || self.n > MAX_SITES {
            return Err(Error::ParticleCount { got: self.n, max: MAX_SITES });
        }
        if self.gamma.len() != self.n {
            return Err(Error::GammaCount { expected: self.n, got: self.gamma.len() });
        }
        if self.control_axes.is_empty() {
            return Err(Error::NoControlAxes);
        }
        let mut seen = BTreeSet::new();
        for c in &self.couplings {
            for idx in [c.k, c.l] {
                if idx >= self.n {
                    return Err(Error::IndexOutOfRange { index: idx + 1, n: self.n });
                }
            }
            if c.k == c.l {
                return Err(Error::SelfCoupling { particle: c.k + 1 });
            }
            let key = (c.k.min(c.l), c.k.max(c.l));
            if !seen.insert(key) {
                return Err(Error::DuplicatePair { k: key.0 + 1, l: key.1 + 1 });
            }
        }
        let mut warnings = Vec::new();
        self.couplings.retain(|c| {
            if c.triple.is_zero() {
                let msg = format!("coupling {{{}, {}}} is all zero and was removed", c.k + 1, c.l + 1);
                warn!("{msg}");
                warnings.push(msg);
                false
            } else {
                true
            }
        });
        for c in self.couplings.iter_mut() {
            if c.k > c.l {
                std::mem::swap(&mut c.k, &mut c.l);
            }
        }
        self.couplings.sort_by_key(|c| (c.k, c.l));
        if self.gamma.iter().all(Zero::is_zero) {
            let msg = "all gyromagnetic ratios are zero; the controls vanish".to_string();
            warn!("{msg}");
            warnings.push(msg);
        }
        Ok(warnings)
    }

    /// Coupling map keyed by ordered pair `(min, max)`.
    pub fn coupling_map(&self) -> BTreeMap<(usize, usize), CouplingTriple> {
        self.couplings.iter().map(|c| ((c.k.min(c.l), c.k.max(c.l)), c.triple.clone())).collect()
    }

    pub fn coupling(&self, k: usize, l: usize) -> Option<&CouplingTriple> {
        self.couplings.iter().find(|c| (c.k == k && c.l == l) || (c.k == l && c.l == k)).map(|c| &c.triple)
    }
}

/// `A = −Σ_{k<l} (M_kl·i(σ_x^k σ_x^l) + N_kl·i(σ_y^k σ_y^l) + P_kl·i(σ_z^k σ_z^l))`.
pub fn build_drift(net: &SpinNetwork) -> Result<AlgebraElement> {
    let mut a = AlgebraElement::zero(net.n);
    for c in &net.couplings {
        for axis in Axis::ALL {
            let s = axis.symbol();
            let word = PauliWord::with_sites(net.n, &[(c.k, s), (c.l, s)])?;
            a.add_term(word, -c.triple.component(axis).clone())?;
        }
    }
    Ok(a)
}

/// `B_v = −Σ_k γ_k · i(σ_v^k)` for every active axis `v`.
pub fn build_controls(net: &SpinNetwork) -> Result<BTreeMap<Axis, AlgebraElement>> {
    net.control_axes
        .iter()
        .map(|&axis| {
            let mut b = AlgebraElement::zero(net.n);
            for (k, g) in net.gamma.iter().enumerate() {
                b.add_term(PauliWord::with_sites(net.n, &[(k, axis.symbol())])?, -g.clone())?;
            }
            Ok((axis, b))
        })
        .collect()
}

/// Drift followed by the active controls in axis order.
pub fn generators(net: &SpinNetwork) -> Result<Vec<AlgebraElement>> {
    let mut out = vec![build_drift(net)?];
    out.extend(build_controls(net)?.into_values());
    Ok(out)
}

/// `i·Ĩ_jv = Σ_{h ∈ block j} i(σ_v^h)`.
pub fn tilde_i(net: &SpinNetwork, block: usize, axis: Axis) -> Result<AlgebraElement> {
    let partition = gamma_partition(net);
    let members = partition.blocks.get(block).ok_or(Error::BlockOutOfRange { block, blocks: partition.len() })?;
    collective(net.n, members, axis)
}

/// `Σ_{h ∈ sites} i(σ_v^h)`.
pub fn collective(n: usize, sites: &[usize], axis: Axis) -> Result<AlgebraElement> {
    let mut e = AlgebraElement::zero(n);
    for &h in sites {
        e.add_term(PauliWord::with_sites(n, &[(h, axis.symbol())])?, Rational::one())?;
    }
    Ok(e)
}

pub fn gamma_partition(net: &SpinNetwork) -> GammaPartition {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut ratios: Vec<Rational> = Vec::new();
    for (k, g) in net.gamma.iter().enumerate() {
        match ratios.iter().position(|r| r == g) {
            Some(j) => blocks[j].push(k),
            None => {
                ratios.push(g.clone());
                blocks.push(vec![k]);
            }
        }
    }
    GammaPartition { blocks, ratios }
}

pub fn build_graph(net: &SpinNetwork) -> InteractionGraph {
    let edges = net
        .couplings
        .iter()
        .filter(|c| !c.triple.is_zero())
        .map(|c| ((c.k.min(c.l), c.k.max(c.l)), c.triple.clone()))
        .collect();
    InteractionGraph::new(net.gamma.clone(), edges)
}
