//! Lie closure of a generator set: the smallest subalgebra of `su(2ⁿ)`
//! containing the generators.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::operator_space::{dimension_su, EchelonBasis};
use crate::pauli::{bracket_elements, AlgebraElement};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub basis: EchelonBasis,
    pub dimension: usize,
    /// The closure reached all of `su(2ⁿ)` and stopped early.
    pub saturated_early: bool,
    /// Number of element brackets evaluated.
    pub bracket_count: usize,
}

/// Computes the Lie closure of `generators` with a FIFO worklist.
///
/// Every newly inserted row is bracketed against every row present when it
/// is dequeued; nonzero residuals are inserted in a fixed order, so the
/// resulting basis and `bracket_count` are deterministic. Stops as soon as
/// the dimension reaches `4ⁿ − 1`. Fails with [`Error::CapExceeded`] once
/// the dimension exceeds `cap`.
pub fn close(generators: &[AlgebraElement], n: usize, cap: Option<usize>) -> Result<ClosureResult> {
    let full = dimension_su(n);
    let mut basis = EchelonBasis::new(n);
    let mut worklist = VecDeque::new();
    let mut bracket_count = 0;

    let over_cap = |dim: usize| cap.is_some_and(|c| dim > c);

    for g in generators {
        if let Some(row) = basis.insert_row(g)? {
            worklist.push_back(row);
            if over_cap(basis.dim()) {
                return Err(Error::CapExceeded { cap: cap.unwrap_or_default() });
            }
        }
    }
    if basis.is_empty() {
        return Err(Error::EmptyGenerators);
    }

    let mut saturated_early = false;
    'outer: while let Some(item) = worklist.pop_front() {
        if basis.dim() == full {
            saturated_early = true;
            break;
        }
        let rows: Vec<AlgebraElement> = basis.rows().collect();
        bracket_count += rows.len();
        let brackets = rows.par_iter().map(|row| bracket_elements(&item, row)).collect::<Result<Vec<_>>>()?;
        for b in brackets.iter().filter(|b| !b.is_zero()) {
            if let Some(row) = basis.insert_row(b)? {
                worklist.push_back(row);
                if over_cap(basis.dim()) {
                    return Err(Error::CapExceeded { cap: cap.unwrap_or_default() });
                }
                if basis.dim() == full {
                    saturated_early = true;
                    break 'outer;
                }
            }
        }
    }

    let dimension = basis.dim();
    Ok(ClosureResult { basis, dimension, saturated_early, bracket_count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator_space::subspace_bracket_contained;
    use crate::pauli::PauliWord;

    fn word(s: &str) -> AlgebraElement {
        AlgebraElement::word(s.parse::<PauliWord>().unwrap()).unwrap()
    }

    #[test]
    fn su2_from_two_paulis() {
        let c = close(&[word("X"), word("Y")], 1, None).unwrap();
        assert_eq!(c.dimension, 3);
        assert!(c.saturated_early);
    }

    #[test]
    fn abelian_generator_stays_put() {
        let c = close(&[word("Z")], 1, None).unwrap();
        assert_eq!(c.dimension, 1);
        assert!(!c.saturated_early);
    }

    #[test]
    fn empty_and_zero_generators_fail() {
        assert!(matches!(close(&[], 2, None), Err(Error::EmptyGenerators)));
        assert!(matches!(close(&[AlgebraElement::zero(2)], 2, None), Err(Error::EmptyGenerators)));
    }

    #[test]
    fn cap_is_enforced() {
        let r = close(&[word("XI"), word("IY"), word("ZZ")], 2, Some(5));
        assert!(matches!(r, Err(Error::CapExceeded { cap: 5 })));
    }

    #[test]
    fn result_is_a_subalgebra_containing_generators() {
        let gens = [word("XZI"), word("IYX"), word("ZIZ")];
        let c = close(&gens, 3, None).unwrap();
        assert!(subspace_bracket_contained(&c.basis, &c.basis, &c.basis).unwrap());
        for g in &gens {
            assert!(c.basis.contains(g).unwrap());
        }
        let again = close(&c.basis.rows().collect::<Vec<_>>(), 3, None).unwrap();
        assert_eq!(again.dimension, c.dimension);
    }
}
