//! Exact linear algebra over the `i·word` basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::pauli::{bracket_elements, AlgebraElement, PauliWord, SiteSymbol};
use crate::rational::{inverse_power_of_two, Rational};
use crate::{Error, Result};

type SparseRow<K> = BTreeMap<K, Rational>;

/// Fully reduced row-echelon form over sparse rows with ordered keys. Each
/// row's pivot is its smallest key, carries coefficient 1, and appears in no
/// other row.
#[derive(Clone, Debug, Default)]
pub(crate) struct RowReducer<K: Ord + Clone> {
    rows: Vec<SparseRow<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> RowReducer<K> {
    pub(crate) fn new() -> Self {
        RowReducer { rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn reduce(&self, v: &SparseRow<K>) -> SparseRow<K> {
        let mut residual = v.clone();
        // Pivot keys occur only in their own row, so the original
        // coefficients at pivot positions are the elimination factors.
        for (key, coef) in v {
            if let Some(&r) = self.pivots.get(key) {
                axpy(&mut residual, &self.rows[r], &-coef.clone());
            }
        }
        residual
    }

    /// Adds the residual of `v` as a new row. Returns it (normalized) when the
    /// rank grew.
    pub(crate) fn insert(&mut self, v: &SparseRow<K>) -> Option<&SparseRow<K>> {
        let mut residual = self.reduce(v);
        let (pivot, lead) = match residual.iter().next() {
            Some((k, c)) => (k.clone(), c.clone()),
            None => return None,
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for c in residual.values_mut() {
                *c *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &residual, &-c);
            }
        }
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(residual);
        self.rows.last()
    }
}

fn axpy<K: Ord + Clone>(target: &mut SparseRow<K>, row: &SparseRow<K>, factor: &Rational) {
    for (k, c) in row {
        let v = c * factor;
        match target.entry(k.clone()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !v.is_zero() {
                    e.insert(v);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

/// Exact rank of a family of sparse vectors.
pub(crate) fn exact_rank<K: Ord + Clone>(vectors: impl IntoIterator<Item = SparseRow<K>>) -> usize {
    let mut reducer = RowReducer::new();
    for v in vectors {
        reducer.insert(&v);
    }
    reducer.rank()
}

/// A linearly independent spanning set of a subspace of `su(2ⁿ)`, kept in
/// fully reduced row-echelon form with lexicographic word order.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    n: usize,
    inner: RowReducer<PauliWord>,
}

impl EchelonBasis {
    pub fn new(n: usize) -> Self {
        EchelonBasis { n, inner: RowReducer::new() }
    }

    /// Basis of the span of `elements`.
    pub fn spanning<'a, I>(n: usize, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a AlgebraElement>,
    {
        let mut basis = Self::new(n);
        for e in elements {
            basis.insert(e)?;
        }
        Ok(basis)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.inner.rank()
    }

    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = AlgebraElement> + '_ {
        self.inner.rows.iter().map(move |r| AlgebraElement::from_map_unchecked(self.n, r.clone()))
    }

    pub fn row(&self, index: usize) -> AlgebraElement {
        AlgebraElement::from_map_unchecked(self.n, self.inner.rows[index].clone())
    }

    /// Pivot word of each row, in row order.
    pub fn pivot_words(&self) -> Vec<PauliWord> {
        self.inner.rows.iter().map(|r| *r.keys().next().expect("rows are nonzero")).collect()
    }

    fn check(&self, e: &AlgebraElement) -> Result<()> {
        if e.n() != self.n {
            return Err(Error::LengthMismatch { left: self.n, right: e.n() });
        }
        Ok(())
    }

    /// Residual of `e` after eliminating every pivot; zero iff `e` is in the span.
    pub fn reduce(&self, e: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(e)?;
        Ok(AlgebraElement::from_map_unchecked(self.n, self.inner.reduce(e.coords())))
    }

    pub fn contains(&self, e: &AlgebraElement) -> Result<bool> {
        Ok(self.reduce(e)?.is_zero())
    }

    /// Adds `e` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, e: &AlgebraElement) -> Result<bool> {
        Ok(self.insert_row(e)?.is_some())
    }

    /// Like [`insert`](Self::insert), returning the new normalized row.
    pub fn insert_row(&mut self, e: &AlgebraElement) -> Result<Option<AlgebraElement>> {
        self.check(e)?;
        let n = self.n;
        Ok(self.inner.insert(e.coords()).map(|r| AlgebraElement::from_map_unchecked(n, r.clone())))
    }

    /// True iff both bases span the same subspace.
    pub fn same_span(&self, other: &EchelonBasis) -> Result<bool> {
        if self.dim() != other.dim() {
            return Ok(false);
        }
        for row in other.rows() {
            if !self.contains(&row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Basis of `self ⊕ other` (the sum of the two subspaces).
    pub fn sum(&self, other: &EchelonBasis) -> Result<EchelonBasis> {
        let mut out = self.clone();
        for row in other.rows() {
            out.insert(&row)?;
        }
        Ok(out)
    }
}

/// True iff `[u, v] ∈ W` for every row `u` of `U` and `v` of `V`.
pub fn subspace_bracket_contained(u: &EchelonBasis, v: &EchelonBasis, w: &EchelonBasis) -> Result<bool> {
    Ok(first_escaping_bracket(u, v, w)?.is_none())
}

/// A pair of row indices whose bracket leaves `W`, with the offending residual.
pub fn first_escaping_bracket(
    u: &EchelonBasis,
    v: &EchelonBasis,
    w: &EchelonBasis,
) -> Result<Option<(usize, usize, AlgebraElement)>> {
    for (i, a) in u.rows().enumerate() {
        for (j, b) in v.rows().enumerate() {
            let residual = w.reduce(&bracket_elements(&a, &b)?)?;
            if !residual.is_zero() {
                return Ok(Some((i, j, residual)));
            }
        }
    }
    Ok(None)
}

/// Word expansion of an operator that may carry an identity component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedElement {
    n: usize,
    identity: Rational,
    traceless: AlgebraElement,
}

impl ExtendedElement {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient on `i·(I⊗…⊗I)`.
    pub fn identity_coeff(&self) -> &Rational {
        &self.identity
    }

    pub fn traceless(&self) -> &AlgebraElement {
        &self.traceless
    }

    /// All terms including the identity word, in word order.
    pub fn terms(&self) -> Vec<(PauliWord, Rational)> {
        let mut out = Vec::with_capacity(self.traceless.support_len() + 1);
        if !self.identity.is_zero() {
            out.push((PauliWord::identity(self.n).expect("validated length"), self.identity.clone()));
        }
        out.extend(self.traceless.terms().map(|(w, c)| (*w, c.clone())));
        out
    }
}

/// Expansion of `D = i·e₁₁` (i in the top-left entry, zeros elsewhere):
/// `e₁₁ = ⊗ₖ(½I + σ_z)`, so the word with `Z` exactly on `S` carries `(½)^(n−|S|)`.
pub fn projector_d(n: usize) -> Result<ExtendedElement> {
    let identity_word = PauliWord::identity(n)?;
    let mut traceless = AlgebraElement::zero(n);
    let mut identity = Rational::zero();
    for subset in 0u64..(1 << n) {
        let mut word = identity_word;
        for site in 0..n {
            if subset >> site & 1 == 1 {
                word = word.with(site, SiteSymbol::Z);
            }
        }
        let coef = inverse_power_of_two((n - subset.count_ones() as usize) as u32);
        if word.is_identity() {
            identity = coef;
        } else {
            traceless.add_term(word, coef)?;
        }
    }
    Ok(ExtendedElement { n, identity, traceless })
}

/// `dim {b ∈ span(L) : [d, b] = 0}`, the kernel dimension of `b ↦ [d, b]` on `L`.
pub fn centralizer_dimension(l: &EchelonBasis, d: &ExtendedElement) -> Result<usize> {
    if d.n() != l.n() {
        return Err(Error::LengthMismatch { left: l.n(), right: d.n() });
    }
    // The identity component commutes with everything.
    let images = l
        .rows()
        .map(|b| bracket_elements(d.traceless(), &b).map(AlgebraElement::into_coords))
        .collect::<Result<Vec<_>>>()?;
    Ok(l.dim() - exact_rank(images))
}

/// Dimension of the center `{z ∈ L : [z, b] = 0 for all b ∈ L}`.
pub fn center_dimension(l: &EchelonBasis) -> Result<usize> {
    let rows: Vec<AlgebraElement> = l.rows().collect();
    let mut images = Vec::with_capacity(rows.len());
    for a in &rows {
        let mut stacked: SparseRow<(usize, PauliWord)> = BTreeMap::new();
        for (j, b) in rows.iter().enumerate() {
            for (w, c) in bracket_elements(a, b)?.into_coords() {
                stacked.insert((j, w), c);
            }
        }
        images.push(stacked);
    }
    Ok(rows.len() - exact_rank(images))
}

/// `dim su(2ⁿ) = 4ⁿ − 1`.
pub fn dimension_su(n: usize) -> usize {
    (1usize << (2 * n)) - 1
}

/// Scales `e` so its leading coefficient is one.
pub fn normalized(e: &AlgebraElement) -> AlgebraElement {
    match e.leading() {
        Some((_, c)) if !c.is_one() => e.scaled(&c.recip()),
        _ => e.clone(),
    }
}
