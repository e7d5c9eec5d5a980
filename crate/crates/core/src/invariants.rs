//! Bowen-Franks groups, the signed invariant, Franks' decision procedure,
//! elementary-equivalence witnesses and the matrix form of a symbol expansion.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::matrix::IntMatrix;
use crate::smith::smith_normal_form;

/// `(sign det(I − A), ℤ/d_1 ⊕ … ⊕ ℤ/d_k)`.
///
/// `divisors` lists the elementary divisors of `I − A` with every `1`
/// dropped; a `0` stands for a free `ℤ` summand. The trivial group is the
/// empty list, so two groups are isomorphic iff their lists are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedBfGroup {
    pub sign: i8,
    pub divisors: Vec<BigInt>,
}

impl SignedBfGroup {
    /// Builds a normalized invariant from a divisibility chain, dropping units.
    pub fn new(sign: i8, chain: impl IntoIterator<Item = BigInt>) -> Self {
        let mut divisors: Vec<BigInt> = chain
            .into_iter()
            .map(|d| d.abs())
            .filter(|d| !d.is_one())
            .collect();
        // nonzero divisors first, in increasing order, then free summands
        divisors.sort_by(|a, b| match (a.is_zero(), b.is_zero()) {
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            _ => a.cmp(b),
        });
        SignedBfGroup { sign, divisors }
    }

    pub fn is_trivial_group(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Product of the divisors; equals `|det(I − A)|` when there is no free summand.
    pub fn order(&self) -> Option<BigInt> {
        if self.divisors.iter().any(Zero::is_zero) {
            None
        } else {
            Some(self.divisors.iter().fold(BigInt::one(), |acc, d| acc * d))
        }
    }
}

impl fmt::Display for SignedBfGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            s if s < 0 => "-",
            0 => "0",
            _ => "+",
        };
        if self.divisors.is_empty() {
            return write!(f, "({sign}, 0)");
        }
        let parts: Vec<String> = self
            .divisors
            .iter()
            .map(|d| if d.is_zero() { "ℤ".into() } else { format!("ℤ/{d}") })
            .collect();
        write!(f, "({sign}, {})", parts.join(" ⊕ "))
    }
}

fn check_nonnegative_square(a: &IntMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if let Some((row, col)) = a.first_negative() {
        return Err(Error::NegativeEntry { row, col });
    }
    Ok(())
}

pub fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Signed Bowen-Franks group of a nonnegative square matrix.
pub fn bowen_franks(a: &IntMatrix) -> Result<SignedBfGroup> {
    check_nonnegative_square(a)?;
    let m = a.identity_minus();
    let sign = sign_of(&m.det());
    let snf = smith_normal_form(&m);
    Ok(SignedBfGroup::new(sign, snf.diagonal()))
}

fn check_franks_hypotheses(a: &IntMatrix, which: &'static str) -> Result<()> {
    check_nonnegative_square(a)?;
    let g = DirectedGraph::from_adjacency(a)?;
    if !g.is_irreducible() {
        return Err(Error::Undecided {
            which,
            reason: "is not irreducible".into(),
        });
    }
    if g.is_single_cycle() {
        return Err(Error::Undecided {
            which,
            reason: "is a single periodic orbit".into(),
        });
    }
    Ok(())
}

/// Flow equivalence of two irreducible edge shifts that are not single orbits.
/// Inputs outside those hypotheses give [`Error::Undecided`] naming the input.
pub fn franks_decide(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    check_franks_hypotheses(a, "A")?;
    check_franks_hypotheses(b, "B")?;
    Ok(bowen_franks(a)? == bowen_franks(b)?)
}

/// Checks `A = RS` and `SR = B` exactly.
pub fn verify_elementary_equivalence(
    a: &IntMatrix,
    b: &IntMatrix,
    r: &IntMatrix,
    s: &IntMatrix,
) -> Result<bool> {
    let (m, n) = (r.rows(), r.cols());
    if s.rows() != n || s.cols() != m {
        return Err(Error::Dimension(format!(
            "R is {m}x{n} so S must be {n}x{m}, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    if a.rows() != m || a.cols() != m || b.rows() != n || b.cols() != n {
        return Err(Error::Dimension(format!(
            "A must be {m}x{m} and B {n}x{n}"
        )));
    }
    for mat in [r, s] {
        if let Some((row, col)) = mat.first_negative() {
            return Err(Error::NegativeEntry { row, col });
        }
    }
    Ok(&(r * s) == a && &(s * r) == b)
}

/// Matrix of the edge shift after expanding one edge `k → l` into a path
/// through a new state. The new state gets index 0 and old indices shift by one.
/// Indices are zero-based.
pub fn expansion_move(a: &IntMatrix, k: usize, l: usize) -> Result<IntMatrix> {
    check_nonnegative_square(a)?;
    let n = a.rows();
    if k >= n || l >= n {
        return Err(Error::Dimension(format!("index ({k}, {l}) outside {n}x{n}")));
    }
    if a.get(k, l).is_zero() {
        return Err(Error::ZeroEntry { row: k, col: l });
    }
    let mut out = IntMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            out.set(i + 1, j + 1, a.get(i, j).clone());
        }
    }
    out.set(0, l + 1, BigInt::one());
    out.set(k + 1, 0, BigInt::one());
    out.set(k + 1, l + 1, a.get(k, l) - 1);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn full_shift_invariant() {
        for r in 2..=6i64 {
            let bf = bowen_franks(&m(&[vec![r]])).unwrap();
            assert_eq!(bf, SignedBfGroup::new(-1, [BigInt::from(r - 1)]));
        }
        assert_eq!(bowen_franks(&m(&[vec![4]])).unwrap().divisors, vec![BigInt::from(3)]);
    }

    #[test]
    fn golden_mean_trivial() {
        let bf = bowen_franks(&m(&[vec![1, 1], vec![1, 0]])).unwrap();
        assert_eq!(bf.sign, -1);
        assert!(bf.is_trivial_group());
    }

    #[test]
    fn identity_one_is_free() {
        let bf = bowen_franks(&m(&[vec![1]])).unwrap();
        assert_eq!(bf.sign, 0);
        assert_eq!(bf.divisors, vec![BigInt::zero()]);
        assert_eq!(bf.order(), None);
    }

    #[test]
    fn franks_examples() {
        assert!(!franks_decide(&m(&[vec![2]]), &m(&[vec![3]])).unwrap());
        assert!(franks_decide(&m(&[vec![2]]), &m(&[vec![1, 1], vec![1, 0]])).unwrap());
        let a = m(&[vec![1, 2], vec![1, 1]]);
        assert!(franks_decide(&a, &a).unwrap());
    }

    #[test]
    fn franks_rejects_outside_hypotheses() {
        let cycle = m(&[vec![0, 1], vec![1, 0]]);
        let err = franks_decide(&m(&[vec![2]]), &cycle).unwrap_err();
        assert!(matches!(err, Error::Undecided { which: "B", .. }));
        let reducible = m(&[vec![1, 1], vec![0, 1]]);
        let err = franks_decide(&reducible, &m(&[vec![2]])).unwrap_err();
        assert!(matches!(err, Error::Undecided { which: "A", .. }));
    }

    #[test]
    fn elementary_equivalence_examples() {
        let four = m(&[vec![4]]);
        assert!(verify_elementary_equivalence(&four, &four, &m(&[vec![2]]), &m(&[vec![2]])).unwrap());
        assert!(verify_elementary_equivalence(&four, &four, &m(&[vec![4]]), &m(&[vec![1]])).unwrap());
        let two = m(&[vec![2]]);
        assert!(!verify_elementary_equivalence(&two, &two, &m(&[vec![1]]), &m(&[vec![1]])).unwrap());
        assert!(verify_elementary_equivalence(&two, &two, &m(&[vec![1, 1]]), &m(&[vec![1]])).is_err());
    }

    #[test]
    fn expansion_of_full_two_shift() {
        let a = m(&[vec![2]]);
        let e = expansion_move(&a, 0, 0).unwrap();
        assert_eq!(e, m(&[vec![0, 1], vec![1, 1]]));
        assert_eq!(e.identity_minus().det(), BigInt::from(-1));
        assert_eq!(bowen_franks(&e).unwrap(), bowen_franks(&a).unwrap());
        assert!(matches!(
            expansion_move(&m(&[vec![1, 0], vec![1, 1]]), 0, 1),
            Err(Error::ZeroEntry { row: 0, col: 1 })
        ));
    }

    #[test]
    fn expansion_off_diagonal() {
        let a = m(&[vec![1, 2], vec![1, 0]]);
        let e = expansion_move(&a, 0, 1).unwrap();
        assert_eq!(e, m(&[vec![0, 0, 1], vec![1, 1, 1], vec![0, 1, 0]]));
        assert_eq!(bowen_franks(&e).unwrap(), bowen_franks(&a).unwrap());
    }
}
