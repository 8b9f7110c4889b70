//! Connectivity of the interaction graph and the disintegration procedure
//! that splits equal-ratio particle blocks by their couplings to already
//! isolated particles.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;

use crate::rational::Rational;
use crate::spin_model::{gamma_partition, CouplingTriple, SpinNetwork};

/// Undirected simple graph on the particles: nodes carry gyromagnetic
/// ratios, edges carry nonzero coupling triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionGraph {
    gamma: Vec<Rational>,
    edges: BTreeMap<(usize, usize), CouplingTriple>,
}

impl InteractionGraph {
    /// Edge keys are normalized to `(min, max)`; zero triples are ignored.
    pub fn new(gamma: Vec<Rational>, edges: BTreeMap<(usize, usize), CouplingTriple>) -> Self {
        let edges =
            edges.into_iter().filter(|(_, t)| !t.is_zero()).map(|((k, l), t)| ((k.min(l), k.max(l)), t)).collect();
        InteractionGraph { gamma, edges }
    }

    pub fn node_count(&self) -> usize {
        self.gamma.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn gamma(&self, k: usize) -> &Rational {
        &self.gamma[k]
    }

    pub fn has_edge(&self, k: usize, l: usize) -> bool {
        self.edges.contains_key(&(k.min(l), k.max(l)))
    }

    pub fn edge(&self, k: usize, l: usize) -> Option<&CouplingTriple> {
        self.edges.get(&(k.min(l), k.max(l)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&(usize, usize), &CouplingTriple)> {
        self.edges.iter()
    }
}

/// Maximal connected node sets, each sorted, ordered by smallest node.
pub fn connected_components(g: &InteractionGraph) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::<usize>::new(g.node_count());
    for &(k, l) in g.edges.keys() {
        uf.union(k, l);
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..g.node_count() {
        by_root.entry(uf.find(k)).or_default().push(k);
    }
    let mut components: Vec<Vec<usize>> = by_root.into_values().collect();
    components.sort_by_key(|c| c[0]);
    components
}

/// Coupling signature of one particle against one reference particle.
pub type PairSignature = [Rational; 3];

/// One productive split of a block during disintegration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitStep {
    pub pass: usize,
    pub set: Vec<usize>,
    /// Reference particles whose signatures differ somewhere inside `set`.
    pub splitters: Vec<usize>,
    /// Per member, the signatures against every reference particle in order.
    pub signatures: Vec<(usize, Vec<PairSignature>)>,
    pub parts: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisintegrationResult {
    /// Every particle ended up isolated.
    pub success: bool,
    /// Final blocks, each sorted, ordered by smallest member.
    pub final_partition: Vec<Vec<usize>>,
    pub trace: Vec<SplitStep>,
    pub passes: usize,
}

/// Refines the equal-ratio blocks of `net` until no block can be split.
///
/// Singleton blocks start as reference particles. In each pass every
/// remaining block is split by the joint signature of its members, namely the
/// unordered absolute triples `{|M|, |N|, |P|}` against every current
/// reference particle (`{0, 0, 0}` when uncoupled). New singletons become
/// reference particles for the next pass. Stops at a fixpoint.
pub fn disintegrate(net: &SpinNetwork) -> DisintegrationResult {
    let partition = gamma_partition(net);
    let couplings = net.coupling_map();
    let signature = |k: usize, reference: usize| -> PairSignature {
        couplings
            .get(&(k.min(reference), k.max(reference)))
            .map(CouplingTriple::abs_multiset)
            .unwrap_or_else(|| CouplingTriple::zero().abs_multiset())
    };

    let mut isolated: BTreeSet<usize> = BTreeSet::new();
    let mut pending: Vec<Vec<usize>> = Vec::new();
    for block in partition.blocks {
        if block.len() == 1 {
            isolated.insert(block[0]);
        } else {
            pending.push(block);
        }
    }

    let mut trace = Vec::new();
    let mut passes = 0;
    while !pending.is_empty() {
        passes += 1;
        let references: Vec<usize> = isolated.iter().copied().collect();
        let mut next = Vec::new();
        let mut new_singletons = Vec::new();
        let mut progressed = false;
        for set in pending {
            let signatures: Vec<(usize, Vec<PairSignature>)> =
                set.iter().map(|&k| (k, references.iter().map(|&r| signature(k, r)).collect())).collect();
            let mut groups: Vec<(Vec<PairSignature>, Vec<usize>)> = Vec::new();
            for (k, sig) in &signatures {
                match groups.iter_mut().find(|(s, _)| s == sig) {
                    Some((_, members)) => members.push(*k),
                    None => groups.push((sig.clone(), vec![*k])),
                }
            }
            if groups.len() == 1 {
                next.push(set);
                continue;
            }
            progressed = true;
            let splitters = references
                .iter()
                .enumerate()
                .filter(|(i, _)| signatures.iter().any(|(_, s)| s[*i] != signatures[0].1[*i]))
                .map(|(_, &r)| r)
                .collect();
            let parts: Vec<Vec<usize>> = groups.into_iter().map(|(_, members)| members).collect();
            for part in &parts {
                if part.len() == 1 {
                    new_singletons.push(part[0]);
                } else {
                    next.push(part.clone());
                }
            }
            trace.push(SplitStep { pass: passes, set, splitters, signatures, parts });
        }
        isolated.extend(new_singletons);
        pending = next;
        if !progressed {
            break;
        }
    }

    let mut final_partition: Vec<Vec<usize>> = isolated.iter().map(|&k| vec![k]).collect();
    final_partition.extend(pending.iter().cloned());
    final_partition.sort_by_key(|b| b[0]);
    DisintegrationResult { success: pending.is_empty(), final_partition, trace, passes }
}
