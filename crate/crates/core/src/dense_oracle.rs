//! Brute-force numeric cross-check.
//!
//! Operators are assembled as explicit `2ⁿ×2ⁿ` complex matrices from the
//! 2×2 spin matrices written out entrywise. Nothing here uses the symbolic
//! product table in [`crate::pauli`]; only the word's site symbols are read.

use log::warn;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::operator_space::ExtendedElement;
use crate::pauli::{AlgebraElement, PauliWord, SiteSymbol};
use crate::rational::{to_f64, Rational};
use crate::{Error, Result};

/// Largest particle count accepted for dense materialization (64×64).
pub const DENSE_MAX_SITES: usize = 6;

/// Relative singular-value threshold for numeric rank decisions.
pub const RANK_TOL: f64 = 1e-9;

/// Accepted residuals this close to the threshold (within a factor 10³) are reported.
const NEAR_THRESHOLD_FACTOR: f64 = 1e3;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    matrix: DMatrix<Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The half-normalized spin matrix for one site.
fn site_matrix(symbol: SiteSymbol) -> DMatrix<Complex64> {
    let z = c(0.0, 0.0);
    let entries = match symbol {
        SiteSymbol::I => [c(1.0, 0.0), z, z, c(1.0, 0.0)],
        SiteSymbol::X => [z, c(0.5, 0.0), c(0.5, 0.0), z],
        SiteSymbol::Y => [z, c(0.0, -0.5), c(0.0, 0.5), z],
        SiteSymbol::Z => [c(0.5, 0.0), z, z, c(-0.5, 0.0)],
    };
    DMatrix::from_row_slice(2, 2, &entries)
}

fn check_cap(n: usize) -> Result<()> {
    if n > DENSE_MAX_SITES {
        return Err(Error::DenseCap { n, cap: DENSE_MAX_SITES });
    }
    Ok(())
}

impl DenseOperator {
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Self {
        DenseOperator { matrix }
    }

    pub fn zeros(dim: usize) -> Self {
        DenseOperator { matrix: DMatrix::zeros(dim, dim) }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        (&self.matrix - &other.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_skew_hermitian(&self, tol: f64) -> bool {
        (&self.matrix + self.matrix.adjoint()).iter().all(|z| z.norm() <= tol)
    }

    pub fn scaled(&self, s: Complex64) -> DenseOperator {
        DenseOperator { matrix: &self.matrix * s }
    }

    pub fn add(&self, other: &DenseOperator) -> Result<DenseOperator> {
        check_dims(self, other)?;
        Ok(DenseOperator { matrix: &self.matrix + &other.matrix })
    }

    pub fn product(&self, other: &DenseOperator) -> Result<DenseOperator> {
        check_dims(self, other)?;
        Ok(DenseOperator { matrix: &self.matrix * &other.matrix })
    }

    /// Real vector `(Re a_ij, Im a_ij)` whose dot product is `Re tr(a*·b)`.
    fn realified(&self) -> DVector<f64> {
        let len = self.matrix.len();
        DVector::from_fn(2 * len, |i, _| {
            let z = self.matrix[i % len];
            if i < len {
                z.re
            } else {
                z.im
            }
        })
    }
}

fn check_dims(a: &DenseOperator, b: &DenseOperator) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(())
}

/// The Kronecker product named by `word` (without the factor `i`).
pub fn materialize_word(word: &PauliWord) -> Result<DenseOperator> {
    check_cap(word.len())?;
    let mut m = DMatrix::from_element(1, 1, c(1.0, 0.0));
    for s in word.symbols() {
        m = m.kronecker(&site_matrix(s));
    }
    Ok(DenseOperator { matrix: m })
}

fn accumulate(n: usize, terms: impl Iterator<Item = (PauliWord, Rational)>) -> Result<DenseOperator> {
    check_cap(n)?;
    let mut out = DenseOperator::zeros(1 << n);
    for (w, coef) in terms {
        let m = materialize_word(&w)?;
        out.matrix += m.matrix * c(0.0, to_f64(&coef));
    }
    Ok(out)
}

/// `Σ c_W · i·W` as a dense matrix.
pub fn materialize(e: &AlgebraElement) -> Result<DenseOperator> {
    accumulate(e.n(), e.terms().map(|(w, c)| (*w, c.clone())))
}

pub fn materialize_extended(e: &ExtendedElement) -> Result<DenseOperator> {
    accumulate(e.n(), e.terms().into_iter())
}

/// `ab − ba`.
pub fn oracle_commutator(a: &DenseOperator, b: &DenseOperator) -> Result<DenseOperator> {
    check_dims(a, b)?;
    Ok(DenseOperator { matrix: &a.matrix * &b.matrix - &b.matrix * &a.matrix })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericClosure {
    pub dimension: usize,
    /// Accepted elements whose relative residual fell within a factor 10³ of `tol`.
    pub near_threshold: usize,
    pub basis: Vec<DenseOperator>,
}

/// Orthonormal basis under `Re tr(a*·b)`, grown by twice-iterated Gram–Schmidt.
struct RealSpan {
    tol: f64,
    ortho: Vec<DVector<f64>>,
    near_threshold: usize,
}

impl RealSpan {
    fn new(tol: f64) -> Self {
        RealSpan { tol, ortho: Vec::new(), near_threshold: 0 }
    }

    /// Inserts `op` when its residual exceeds `tol` relative to `scale`, the
    /// magnitude `op` would have without cancellation. Brackets that vanish
    /// up to roundoff are thus rejected along with in-span elements.
    fn try_insert(&mut self, op: &DenseOperator, scale: f64) -> bool {
        let v = op.realified();
        let norm = v.norm();
        if norm == 0.0 {
            return false;
        }
        let mut r = v;
        for _ in 0..2 {
            for q in &self.ortho {
                let proj = q.dot(&r);
                r.axpy(-proj, q, 1.0);
            }
        }
        let residual = r.norm();
        let ratio = residual / norm.max(scale);
        let near = ratio > self.tol / NEAR_THRESHOLD_FACTOR && ratio < self.tol * NEAR_THRESHOLD_FACTOR;
        if near {
            warn!("numeric rank decision near threshold: relative residual {ratio:.3e}, tol {:.1e}", self.tol);
        }
        if ratio <= self.tol {
            return false;
        }
        if near {
            self.near_threshold += 1;
        }
        self.ortho.push(r / residual);
        true
    }
}

fn frobenius(op: &DenseOperator) -> f64 {
    op.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Numeric Lie closure dimension of `generators` with the same FIFO
/// worklist as the exact closure.
pub fn numeric_closure_dim(generators: &[DenseOperator], tol: f64) -> Result<NumericClosure> {
    let Some(first) = generators.first() else {
        return Err(Error::EmptyGenerators);
    };
    let dim = first.dim();
    if dim > 1 << DENSE_MAX_SITES {
        return Err(Error::DenseCap { n: dim.trailing_zeros() as usize, cap: DENSE_MAX_SITES });
    }
    let full = dim * dim - 1;
    let mut span = RealSpan::new(tol);
    let mut basis: Vec<DenseOperator> = Vec::new();
    let mut norms: Vec<f64> = Vec::new();
    let mut next = 0;
    for g in generators {
        check_dims(first, g)?;
        if span.try_insert(g, 0.0) {
            basis.push(g.clone());
            norms.push(frobenius(g));
        }
    }
    while next < basis.len() && basis.len() < full {
        let item = basis[next].clone();
        next += 1;
        let count = basis.len();
        for j in 0..count {
            let b = oracle_commutator(&item, &basis[j])?;
            // ‖[a, b]‖ ≤ 2‖a‖‖b‖.
            let scale = 2.0 * norms[next - 1] * norms[j];
            if span.try_insert(&b, scale) {
                norms.push(frobenius(&b));
                basis.push(b);
                if basis.len() == full {
                    break;
                }
            }
        }
    }
    Ok(NumericClosure { dimension: basis.len(), near_threshold: span.near_threshold, basis })
}

/// Rank of the Gram matrix `G_ij = Re tr(a_i*·a_j)`, counting singular
/// values above `tol · σ_max`.
pub fn gram_rank(ops: &[DenseOperator], tol: f64) -> usize {
    if ops.is_empty() {
        return 0;
    }
    let vecs: Vec<DVector<f64>> = ops.iter().map(DenseOperator::realified).collect();
    let gram = DMatrix::from_fn(vecs.len(), vecs.len(), |i, j| vecs[i].dot(&vecs[j]));
    let sv = gram.singular_values();
    let max = sv.max();
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator_space::projector_d;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    fn elem(s: &str) -> AlgebraElement {
        AlgebraElement::word(w(s)).unwrap()
    }

    #[test]
    fn materialize_examples() {
        let z = materialize_word(&w("Z")).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]);
        assert_eq!(z.matrix(), &expected);

        let ixi = materialize(&elem("XI")).unwrap();
        let manual = site_matrix(SiteSymbol::X).kronecker(&site_matrix(SiteSymbol::I)) * c(0.0, 1.0);
        assert!(ixi.max_abs_diff(&DenseOperator::from_matrix(manual)) < 1e-15);
        assert!(ixi.is_skew_hermitian(1e-12));

        let d = materialize_extended(&projector_d(2).unwrap()).unwrap();
        let mut e11 = DMatrix::zeros(4, 4);
        e11[(0, 0)] = c(0.0, 1.0);
        assert!(d.max_abs_diff(&DenseOperator::from_matrix(e11)) < 1e-15);

        assert!(matches!(materialize_word(&w("XXXXXXX")), Err(Error::DenseCap { n: 7, cap: 6 })));
    }

    #[test]
    fn commutator_examples() {
        let ix = materialize(&elem("X")).unwrap();
        let iy = materialize(&elem("Y")).unwrap();
        let minus_iz = materialize(&AlgebraElement::term(w("Z"), crate::rational::int(-1)).unwrap()).unwrap();
        assert!(oracle_commutator(&ix, &iy).unwrap().max_abs_diff(&minus_iz) < 1e-15);
        assert_eq!(oracle_commutator(&ix, &ix).unwrap().max_abs(), 0.0);
        assert!(oracle_commutator(&ix, &materialize(&elem("XI")).unwrap()).is_err());
    }

    #[test]
    fn numeric_closure_examples() {
        let z = [materialize(&elem("Z")).unwrap()];
        assert_eq!(numeric_closure_dim(&z, RANK_TOL).unwrap().dimension, 1);
        let xy = [materialize(&elem("X")).unwrap(), materialize(&elem("Y")).unwrap()];
        let closure = numeric_closure_dim(&xy, RANK_TOL).unwrap();
        assert_eq!(closure.dimension, 3);
        assert_eq!(gram_rank(&closure.basis, RANK_TOL), 3);
        assert!(numeric_closure_dim(&[], RANK_TOL).is_err());
    }
}
