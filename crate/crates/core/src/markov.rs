//! Markov triples, mutations, and the mutation tree.
//!
//! A Markov triple is a positive integer solution of `a^2 + b^2 + c^2 = 3abc`.
//! Replacing one entry `x` by `3 * (product of the others) - x` is again a
//! solution (Vieta jumping), and every triple is reachable from `(1,1,1)` by
//! such mutations. The squared triple `(a^2, b^2, c^2)` labels the weighted
//! projective degeneration indexed by the triple; no geometry is computed
//! here, the label is consumed by [`crate::atlas`].
//!
//! Entries are arbitrary-precision: Markov numbers grow doubly exponentially
//! along the tree.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MarkovError {
    #[error("entries must be positive, got ({0}, {1}, {2})")]
    NonPositive(BigInt, BigInt, BigInt),
    #[error("({0}, {1}, {2}) does not satisfy the Markov equation")]
    NotMarkov(BigInt, BigInt, BigInt),
    #[error("mutation slot must be 1, 2 or 3, got {0}")]
    BadSlot(usize),
    #[error("consecutive triples {0} and {1} do not differ by one mutation")]
    NotAdjacent(MarkovTriple, MarkovTriple),
}

/// True iff `a^2 + b^2 + c^2 = 3abc`. Inputs must be positive.
pub fn is_markov(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<bool, MarkovError> {
    if a <= &BigInt::zero() || b <= &BigInt::zero() || c <= &BigInt::zero() {
        return Err(MarkovError::NonPositive(a.clone(), b.clone(), c.clone()));
    }
    Ok(a * a + b * b + c * c == 3 * (a * b * c))
}

/// A Markov triple in canonical form: sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkovTriple {
    entries: [BigInt; 3],
}

impl MarkovTriple {
    /// Canonicalize and validate.
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self, MarkovError> {
        if !is_markov(&a, &b, &c)? {
            return Err(MarkovError::NotMarkov(a, b, c));
        }
        let mut entries = [a, b, c];
        entries.sort();
        Ok(MarkovTriple { entries })
    }

    pub fn from_u64(a: u64, b: u64, c: u64) -> Result<Self, MarkovError> {
        MarkovTriple::new(BigInt::from(a), BigInt::from(b), BigInt::from(c))
    }

    /// The root of the mutation tree.
    pub fn initial() -> Self {
        let one = BigInt::one();
        MarkovTriple { entries: [one.clone(), one.clone(), one] }
    }

    pub fn entries(&self) -> &[BigInt; 3] {
        &self.entries
    }

    /// Mutate the `slot`-th entry (1-based): `x -> 3 * product(others) - x`.
    pub fn mutate(&self, slot: usize) -> Result<MarkovTriple, MarkovError> {
        if !(1..=3).contains(&slot) {
            return Err(MarkovError::BadSlot(slot));
        }
        let i = slot - 1;
        let others: Vec<&BigInt> =
            (0..3).filter(|j| *j != i).map(|j| &self.entries[j]).collect();
        let new = 3 * (others[0] * others[1]) - &self.entries[i];
        let mut entries = self.entries.clone();
        entries[i] = new;
        entries.sort();
        let t = MarkovTriple { entries };
        debug_assert!(is_markov(&t.entries[0], &t.entries[1], &t.entries[2]).unwrap());
        Ok(t)
    }

    /// The three canonical neighbours in the mutation tree.
    pub fn neighbours(&self) -> Vec<MarkovTriple> {
        (1..=3).map(|s| self.mutate(s).unwrap()).collect()
    }

    /// The weights `(a^2, b^2, c^2)` of the associated weighted projective
    /// degeneration.
    pub fn squared(&self) -> [BigInt; 3] {
        [
            &self.entries[0] * &self.entries[0],
            &self.entries[1] * &self.entries[1],
            &self.entries[2] * &self.entries[2],
        ]
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.entries[0], self.entries[1], self.entries[2])
    }
}

/// All canonical triples reachable from `(1,1,1)` by at most `depth`
/// mutations.
pub fn markov_tree(depth: u32) -> BTreeSet<MarkovTriple> {
    markov_tree_with_parents(depth).into_keys().collect()
}

/// Breadth-first tree with parent pointers; the root maps to `None`.
pub fn markov_tree_with_parents(depth: u32) -> BTreeMap<MarkovTriple, Option<MarkovTriple>> {
    let mut out = BTreeMap::new();
    let root = MarkovTriple::initial();
    out.insert(root.clone(), None);
    let mut frontier = VecDeque::new();
    frontier.push_back((root, 0u32));
    while let Some((t, d)) = frontier.pop_front() {
        if d == depth {
            continue;
        }
        for n in t.neighbours() {
            if !out.contains_key(&n) {
                out.insert(n.clone(), Some(t.clone()));
                frontier.push_back((n, d + 1));
            }
        }
    }
    out
}

/// Check a path of canonical triples for single-mutation adjacency and return
/// for each step the 1-based slot of the current triple that was mutated.
pub fn mutation_slots(path: &[MarkovTriple]) -> Result<Vec<usize>, MarkovError> {
    let mut slots = Vec::new();
    for pair in path.windows(2) {
        let slot = (1..=3)
            .find(|s| pair[0].mutate(*s).unwrap() == pair[1])
            .ok_or_else(|| MarkovError::NotAdjacent(pair[0].clone(), pair[1].clone()))?;
        slots.push(slot);
    }
    Ok(slots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u64, b: u64, c: u64) -> MarkovTriple {
        MarkovTriple::from_u64(a, b, c).unwrap()
    }

    #[test]
    fn markov_equation_cases() {
        let big = |n: u64| BigInt::from(n);
        assert!(is_markov(&big(1), &big(1), &big(1)).unwrap());
        assert!(is_markov(&big(1), &big(2), &big(5)).unwrap());
        assert!(!is_markov(&big(1), &big(2), &big(3)).unwrap());
        assert!(matches!(
            is_markov(&BigInt::from(0), &big(1), &big(1)),
            Err(MarkovError::NonPositive(..))
        ));
    }

    #[test]
    fn mutation_examples() {
        assert_eq!(MarkovTriple::initial().mutate(3).unwrap(), t(1, 1, 2));
        assert_eq!(t(1, 1, 2).mutate(2).unwrap(), t(1, 2, 5));
    }

    #[test]
    fn mutation_is_involutive() {
        for triple in markov_tree(4) {
            for slot in 1..=3 {
                let back = triple.mutate(slot).unwrap();
                assert!(back.neighbours().contains(&triple));
            }
        }
    }

    #[test]
    fn tree_small_depths() {
        let d0 = markov_tree(0);
        assert_eq!(d0.len(), 1);
        assert!(d0.contains(&MarkovTriple::initial()));

        let d2 = markov_tree(2);
        let expected: BTreeSet<_> = [t(1, 1, 1), t(1, 1, 2), t(1, 2, 5)].into_iter().collect();
        assert_eq!(d2, expected);
    }

    #[test]
    fn tree_depth_three_members() {
        let d3 = markov_tree(3);
        assert!(d3.contains(&t(2, 5, 29)));
        assert!(d3.contains(&t(1, 5, 13)));
        for triple in &d3 {
            let [a, b, c] = triple.entries();
            assert!(is_markov(a, b, c).unwrap());
        }
    }

    #[test]
    fn parent_pointers_are_adjacent() {
        for (child, parent) in markov_tree_with_parents(4) {
            if let Some(p) = parent {
                assert!(p.neighbours().contains(&child));
            }
        }
    }

    #[test]
    fn slots_along_standard_path() {
        let path = vec![t(1, 1, 1), t(1, 1, 2), t(1, 2, 5)];
        let slots = mutation_slots(&path).unwrap();
        assert_eq!(slots.len(), 2);
        assert!(mutation_slots(&[t(1, 1, 1), t(1, 2, 5)]).is_err());
    }
}
