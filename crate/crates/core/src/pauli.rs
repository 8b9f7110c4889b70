//! Exact arithmetic on Kronecker products of spin matrices.
//!
//! The single-site matrices are the half-normalized spin operators
//! `σ_x = ½[[0,1],[1,0]]`, `σ_y = ½[[0,-i],[i,0]]`, `σ_z = ½[[1,0],[0,-1]]`,
//! so that `σ_v² = ¼·I` and `[σ_x, σ_y] = iσ_z`. A [`PauliWord`] names one
//! Kronecker product of these (or the identity) per site, and an
//! [`AlgebraElement`] is a real rational combination `Σ c_W · i·W` over
//! non-identity words, i.e. a traceless skew-Hermitian operator.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, inverse_power_of_two, Rational};
use crate::{Error, Result};

/// Largest supported particle count; words are packed two bits per site into a `u64`.
pub const MAX_SITES: usize = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum SiteSymbol {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl SiteSymbol {
    pub const ALL: [SiteSymbol; 4] = [SiteSymbol::I, SiteSymbol::X, SiteSymbol::Y, SiteSymbol::Z];
    pub const PAULIS: [SiteSymbol; 3] = [SiteSymbol::X, SiteSymbol::Y, SiteSymbol::Z];

    fn from_code(code: u64) -> Self {
        match code & 3 {
            0 => SiteSymbol::I,
            1 => SiteSymbol::X,
            2 => SiteSymbol::Y,
            _ => SiteSymbol::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            SiteSymbol::I => 'I',
            SiteSymbol::X => 'X',
            SiteSymbol::Y => 'Y',
            SiteSymbol::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(SiteSymbol::I),
            'X' => Some(SiteSymbol::X),
            'Y' => Some(SiteSymbol::Y),
            'Z' => Some(SiteSymbol::Z),
            _ => None,
        }
    }

    /// The next Pauli in the cyclic order x → y → z → x.
    fn cyclic_successor(self) -> Self {
        match self {
            SiteSymbol::X => SiteSymbol::Y,
            SiteSymbol::Y => SiteSymbol::Z,
            SiteSymbol::Z => SiteSymbol::X,
            SiteSymbol::I => SiteSymbol::I,
        }
    }
}

impl fmt::Display for SiteSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A coefficient of the form `magnitude · i^i_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseCoefficient {
    magnitude: Rational,
    i_power: u8,
}

impl PhaseCoefficient {
    pub fn new(magnitude: Rational, i_power: u8) -> Self {
        if magnitude.is_zero() {
            return Self::zero();
        }
        let mut i_power = i_power % 4;
        let magnitude = if magnitude.is_negative() {
            i_power = (i_power + 2) % 4;
            -magnitude
        } else {
            magnitude
        };
        PhaseCoefficient { magnitude, i_power }
    }

    pub fn zero() -> Self {
        PhaseCoefficient { magnitude: Rational::zero(), i_power: 0 }
    }

    pub fn one() -> Self {
        PhaseCoefficient { magnitude: Rational::one(), i_power: 0 }
    }

    fn from_raw(halvings: u32, i_power: u8) -> Self {
        PhaseCoefficient { magnitude: inverse_power_of_two(halvings), i_power: i_power % 4 }
    }

    pub fn magnitude(&self) -> &Rational {
        &self.magnitude
    }

    pub fn i_power(&self) -> u8 {
        self.i_power
    }

    pub fn is_zero(&self) -> bool {
        self.magnitude.is_zero()
    }

    /// Real and imaginary parts.
    pub fn parts(&self) -> (Rational, Rational) {
        let m = self.magnitude.clone();
        match self.i_power {
            0 => (m, Rational::zero()),
            1 => (Rational::zero(), m),
            2 => (-m, Rational::zero()),
            _ => (Rational::zero(), -m),
        }
    }
}

impl Mul for &PhaseCoefficient {
    type Output = PhaseCoefficient;

    fn mul(self, rhs: &PhaseCoefficient) -> PhaseCoefficient {
        PhaseCoefficient::new(&self.magnitude * &rhs.magnitude, self.i_power + rhs.i_power)
    }
}

impl fmt::Display for PhaseCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.i_power >= 2 { "-" } else { "" };
        let unit = if self.i_power % 2 == 1 { "i" } else { "" };
        write!(f, "{sign}{}{unit}", format_rational(&self.magnitude))
    }
}

/// Product of two single-site matrices as `(halvings, i_power, symbol)`,
/// meaning `σ_a·σ_b = 2^-halvings · i^i_power · σ_symbol`.
fn site_product_raw(a: SiteSymbol, b: SiteSymbol) -> (u32, u8, SiteSymbol) {
    use SiteSymbol::I;
    match (a, b) {
        (I, s) | (s, I) => (0, 0, s),
        (a, b) if a == b => (2, 0, I),
        (a, b) => {
            let result = SiteSymbol::from_code(a as u64 ^ b as u64);
            // σ_a σ_b = (i/2) σ_c for cyclic (a, b, c), -(i/2) σ_c otherwise.
            let i_power = if a.cyclic_successor() == b { 1 } else { 3 };
            (1, i_power, result)
        }
    }
}

/// `σ_a · σ_b = coefficient · σ_result`.
pub fn site_product(a: SiteSymbol, b: SiteSymbol) -> (PhaseCoefficient, SiteSymbol) {
    let (h, p, s) = site_product_raw(a, b);
    (PhaseCoefficient::from_raw(h, p), s)
}

/// A Kronecker product with one symbol per site. Site 0 is the leftmost
/// factor. Words of equal length order lexicographically with `I < X < Y < Z`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliWord {
    len: u8,
    bits: u64,
}

impl PauliWord {
    fn check_len(n: usize) -> Result<()> {
        if n == 0 || n > MAX_SITES {
            return Err(Error::ParticleCount { got: n, max: MAX_SITES });
        }
        Ok(())
    }

    fn shift(&self, site: usize) -> usize {
        2 * (self.len as usize - 1 - site)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::check_len(n)?;
        Ok(PauliWord { len: n as u8, bits: 0 })
    }

    pub fn from_symbols(symbols: &[SiteSymbol]) -> Result<Self> {
        Self::check_len(symbols.len())?;
        let bits = symbols.iter().fold(0u64, |acc, &s| (acc << 2) | s as u64);
        Ok(PauliWord { len: symbols.len() as u8, bits })
    }

    /// Word with the given symbols at the listed sites and identity elsewhere.
    pub fn with_sites(n: usize, sites: &[(usize, SiteSymbol)]) -> Result<Self> {
        let mut word = Self::identity(n)?;
        for &(site, symbol) in sites {
            if site >= n {
                return Err(Error::IndexOutOfRange { index: site + 1, n });
            }
            word = word.with(site, symbol);
        }
        Ok(word)
    }

    /// Copy with `site` replaced by `symbol`. Panics if `site` is out of range.
    pub fn with(self, site: usize, symbol: SiteSymbol) -> Self {
        assert!(site < self.len(), "site {site} out of range for length {}", self.len());
        let shift = self.shift(site);
        let bits = (self.bits & !(3 << shift)) | ((symbol as u64) << shift);
        PauliWord { len: self.len, bits }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, site: usize) -> SiteSymbol {
        SiteSymbol::from_code(self.bits >> self.shift(site))
    }

    pub fn symbols(&self) -> impl Iterator<Item = SiteSymbol> + '_ {
        (0..self.len()).map(move |k| self.get(k))
    }

    pub fn is_identity(&self) -> bool {
        self.bits == 0
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> usize {
        self.symbols().filter(|&s| s != SiteSymbol::I).count()
    }

    /// Sites carrying a non-identity symbol.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.get(k) != SiteSymbol::I).collect()
    }

    /// Word with site order rearranged: site `k` of the result is site
    /// `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.len());
        let mut out = PauliWord { len: self.len, bits: 0 };
        for (k, &src) in perm.iter().enumerate() {
            out = out.with(k, self.get(src));
        }
        out
    }

    /// All `4ⁿ − 1` non-identity words of length `n`, in increasing order.
    pub fn all_nonidentity(n: usize) -> Result<impl Iterator<Item = PauliWord>> {
        Self::check_len(n)?;
        let count = 1u64 << (2 * n);
        Ok((1..count).map(move |bits| PauliWord { len: n as u8, bits }))
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.symbols() {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliWord({self})")
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(SiteSymbol::from_char)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidWord(s.to_string()))?;
        PauliWord::from_symbols(&symbols).map_err(|_| Error::InvalidWord(s.to_string()))
    }
}

fn check_same_len(p: &PauliWord, q: &PauliWord) -> Result<()> {
    if p.len != q.len {
        return Err(Error::LengthMismatch { left: p.len(), right: q.len() });
    }
    Ok(())
}

/// Sitewise product `P·Q = 2^-halvings · i^i_power · W`.
fn word_product_raw(p: &PauliWord, q: &PauliWord) -> (u32, u8, PauliWord) {
    let mut halvings = 0;
    let mut i_power = 0u8;
    for k in 0..p.len() {
        let (h, ip, _) = site_product_raw(p.get(k), q.get(k));
        halvings += h;
        i_power += ip;
    }
    // Symbol codes multiply by XOR: X^Y = Z, Y^Z = X, Z^X = Y, s^s = I.
    (halvings, i_power % 4, PauliWord { len: p.len, bits: p.bits ^ q.bits })
}

pub fn word_product(p: &PauliWord, q: &PauliWord) -> Result<(PhaseCoefficient, PauliWord)> {
    check_same_len(p, q)?;
    let (h, ip, w) = word_product_raw(p, q);
    Ok((PhaseCoefficient::from_raw(h, ip), w))
}

/// Returns `(negative, halvings, W)` with `[iP, iQ] = ±2^-halvings · iW`, or
/// `None` when the words commute.
pub(crate) fn commutator_raw(p: &PauliWord, q: &PauliWord) -> Option<(bool, u32, PauliWord)> {
    // Sites where both are non-identity and different anticommute.
    let (pb, qb) = (p.bits, q.bits);
    const LOW: u64 = 0x5555_5555_5555_5555;
    let p_nz = (pb | (pb >> 1)) & LOW;
    let q_nz = (qb | (qb >> 1)) & LOW;
    let diff = pb ^ qb;
    let diff_nz = (diff | (diff >> 1)) & LOW;
    let anti = p_nz & q_nz & diff_nz;
    if anti.count_ones().is_multiple_of(2) {
        return None;
    }
    let (h, ip, w) = word_product_raw(p, q);
    // PQ = c·W with c = 2^-h·i^ip and QP = -c·W, so [iP, iQ] = -(PQ - QP)
    // = -2c·W = -2^(1-h)·i^(ip-1)·(iW). ip is odd here, h ≥ 1.
    debug_assert!(ip % 2 == 1 && h >= 1);
    let negative = ip == 1;
    Some((negative, h - 1, w))
}

/// `[iP, iQ] = r · iW`, or `None` when the words commute.
pub fn basis_commutator(p: &PauliWord, q: &PauliWord) -> Result<Option<(Rational, PauliWord)>> {
    check_same_len(p, q)?;
    Ok(commutator_raw(p, q).map(|(negative, h, w)| {
        let r = inverse_power_of_two(h);
        (if negative { -r } else { r }, w)
    }))
}

/// A real combination `Σ c_W · i·W` over non-identity words of a fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    n: usize,
    coords: BTreeMap<PauliWord, Rational>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, coords: BTreeMap::new() }
    }

    /// `coef · i·word`.
    pub fn term(word: PauliWord, coef: Rational) -> Result<Self> {
        let mut e = Self::zero(word.len());
        e.add_term(word, coef)?;
        Ok(e)
    }

    /// `i·word`.
    pub fn word(word: PauliWord) -> Result<Self> {
        Self::term(word, Rational::one())
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliWord, Rational)>,
    {
        let mut e = Self::zero(n);
        for (w, c) in terms {
            e.add_term(w, c)?;
        }
        Ok(e)
    }

    /// Parses terms like `[("XIZ", "1/2"), ("YYI", "-1")]`.
    pub fn parse_terms(n: usize, terms: &[(&str, &str)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|(w, c)| Ok((w.parse()?, crate::rational::parse_rational(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(n, parsed)
    }

    pub(crate) fn from_map_unchecked(n: usize, coords: BTreeMap<PauliWord, Rational>) -> Self {
        debug_assert!(coords.iter().all(|(w, c)| !c.is_zero() && !w.is_identity() && w.len() == n));
        AlgebraElement { n, coords }
    }

    pub fn add_term(&mut self, word: PauliWord, coef: Rational) -> Result<()> {
        if word.len() != self.n {
            return Err(Error::LengthMismatch { left: self.n, right: word.len() });
        }
        if word.is_identity() {
            return Err(Error::IdentityWord);
        }
        add_into(&mut self.coords, word, coef);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, word: &PauliWord) -> Option<&Rational> {
        self.coords.get(word)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliWord, &Rational)> {
        self.coords.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coords.len()
    }

    /// Lexicographically smallest word with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&PauliWord, &Rational)> {
        self.coords.iter().next()
    }

    pub(crate) fn coords(&self) -> &BTreeMap<PauliWord, Rational> {
        &self.coords
    }

    pub(crate) fn into_coords(self) -> BTreeMap<PauliWord, Rational> {
        self.coords
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &AlgebraElement, factor: &Rational) -> Result<()> {
        self.check_len(other)?;
        if factor.is_zero() {
            return Ok(());
        }
        for (w, c) in &other.coords {
            add_into(&mut self.coords, *w, c * factor);
        }
        Ok(())
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.n);
        }
        let coords = self.coords.iter().map(|(w, c)| (*w, c * factor)).collect();
        AlgebraElement { n: self.n, coords }
    }
}

fn add_into(coords: &mut BTreeMap<PauliWord, Rational>, word: PauliWord, coef: Rational) {
    if coef.is_zero() {
        return;
    }
    match coords.entry(word) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coef);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coef;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·i{}", format_rational(c), w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement[n={}]({self})", self.n)
    }
}

/// Panics on length mismatch; use [`AlgebraElement::add_scaled`] for a checked form.
impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one()).expect("length mismatch in element addition");
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one()).expect("length mismatch in element subtraction");
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        self.scaled(&-Rational::one())
    }
}

impl Mul<&AlgebraElement> for &Rational {
    type Output = AlgebraElement;

    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        rhs.scaled(self)
    }
}

/// Bilinear extension of [`basis_commutator`].
pub fn bracket_elements(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.check_len(b)?;
    let mut acc: HashMap<PauliWord, Rational> = HashMap::new();
    for (p, cp) in &a.coords {
        for (q, cq) in &b.coords {
            if let Some((negative, h, w)) = commutator_raw(p, q) {
                let mut v = cp * cq;
                if h > 0 {
                    v /= Rational::from_integer(num_bigint::BigInt::one() << h);
                }
                if negative {
                    v = -v;
                }
                *acc.entry(w).or_insert_with(Rational::zero) += v;
            }
        }
    }
    let coords = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    Ok(AlgebraElement { n: a.n, coords })
}

/// Swap-symmetrization on two-site operators:
/// `ρ(i σ₁⊗σ₂) = ½ i(σ₁⊗σ₂ + σ₂⊗σ₁)`, extended linearly.
pub fn symmetrize_rho(e: &AlgebraElement) -> Result<AlgebraElement> {
    if e.n != 2 {
        return Err(Error::LengthMismatch { left: e.n, right: 2 });
    }
    let half = crate::rational::ratio(1, 2);
    let mut out = AlgebraElement::zero(2);
    for (w, c) in &e.coords {
        let v = c * &half;
        add_into(&mut out.coords, *w, v.clone());
        add_into(&mut out.coords, w.permuted(&[1, 0]), v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use SiteSymbol::*;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    #[test]
    fn site_product_examples() {
        assert_eq!(site_product(X, X), (PhaseCoefficient::new(ratio(1, 4), 0), I));
        assert_eq!(site_product(I, Z), (PhaseCoefficient::one(), Z));
        assert_eq!(site_product(X, Y), (PhaseCoefficient::new(ratio(1, 2), 1), Z));
        assert_eq!(site_product(Y, X), (PhaseCoefficient::new(ratio(1, 2), 3), Z));
        assert_eq!(site_product(Z, X), (PhaseCoefficient::new(ratio(1, 2), 1), Y));
    }

    #[test]
    fn site_product_coefficients_are_restricted() {
        let allowed = [
            PhaseCoefficient::one(),
            PhaseCoefficient::new(ratio(1, 4), 0),
            PhaseCoefficient::new(ratio(1, 2), 1),
            PhaseCoefficient::new(ratio(1, 2), 3),
        ];
        for a in SiteSymbol::ALL {
            for b in SiteSymbol::ALL {
                assert!(allowed.contains(&site_product(a, b).0));
            }
        }
    }

    #[test]
    fn word_product_examples() {
        assert_eq!(word_product(&w("XI"), &w("YI")).unwrap(), (PhaseCoefficient::new(ratio(1, 2), 1), w("ZI")));
        assert_eq!(word_product(&w("XI"), &w("IY")).unwrap(), (PhaseCoefficient::one(), w("XY")));
        assert_eq!(word_product(&w("XY"), &w("XY")).unwrap(), (PhaseCoefficient::new(ratio(1, 16), 0), w("II")));
        assert!(matches!(word_product(&w("X"), &w("XY")), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(basis_commutator(&w("XI"), &w("YI")).unwrap(), Some((int(-1), w("ZI"))));
        assert_eq!(basis_commutator(&w("XI"), &w("IY")).unwrap(), None);
        assert_eq!(basis_commutator(&w("XY"), &w("YX")).unwrap(), None);
        // [iσx⊗σz, iσz⊗I] = -(σxσz - σzσx)⊗σz = -(-iσy)⊗σz = iσy⊗σz
        assert_eq!(basis_commutator(&w("XZ"), &w("ZI")).unwrap(), Some((int(1), w("YZ"))));
        assert!(basis_commutator(&w("XZ"), &w("Z")).is_err());
    }

    #[test]
    fn word_parsing_and_order() {
        assert_eq!(w("xiz").to_string(), "XIZ");
        assert!("XA".parse::<PauliWord>().is_err());
        assert!("".parse::<PauliWord>().is_err());
        assert!(w("IX") < w("XI"));
        assert!(w("XZ") < w("YI"));
        let all: Vec<_> = PauliWord::all_nonidentity(2).unwrap().collect();
        assert_eq!(all.len(), 15);
        assert!(all.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(all[0], w("IX"));
        assert_eq!(w("XIZ").support(), vec![0, 2]);
        assert_eq!(w("XIZ").with(1, Y), w("XYZ"));
    }

    #[test]
    fn identity_word_is_rejected() {
        assert!(matches!(AlgebraElement::word(w("II")), Err(Error::IdentityWord)));
    }

    #[test]
    fn element_arithmetic_drops_zeros() {
        let a = AlgebraElement::parse_terms(2, &[("XI", "1"), ("YZ", "-2")]).unwrap();
        let b = AlgebraElement::parse_terms(2, &[("XI", "-1")]).unwrap();
        let s = &a + &b;
        assert_eq!(s.support_len(), 1);
        assert_eq!(s.coeff(&w("YZ")), Some(&int(-2)));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn bracket_examples() {
        let a = AlgebraElement::word(w("XX")).unwrap();
        let b = AlgebraElement::word(w("IY")).unwrap();
        assert_eq!(bracket_elements(&a, &b).unwrap(), AlgebraElement::term(w("XZ"), int(-1)).unwrap());
        assert!(bracket_elements(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn rho_examples() {
        let e = AlgebraElement::word(w("XY")).unwrap();
        let expected = AlgebraElement::parse_terms(2, &[("XY", "1/2"), ("YX", "1/2")]).unwrap();
        assert_eq!(symmetrize_rho(&e).unwrap(), expected);

        let zz = AlgebraElement::word(w("ZZ")).unwrap();
        assert_eq!(symmetrize_rho(&zz).unwrap(), zz);

        let e = AlgebraElement::parse_terms(2, &[("XI", "1"), ("YZ", "-2")]).unwrap();
        let once = symmetrize_rho(&e).unwrap();
        assert_eq!(symmetrize_rho(&once).unwrap(), once);
        assert!(symmetrize_rho(&AlgebraElement::word(w("XYZ")).unwrap()).is_err());
    }
}
