//! Multi-indices on `N^r`, lattice boxes and monotone paths from the origin.
//!
//! Directions are 1-based (`e_1 .. e_r`); the serialized form of a multi-index
//! is a plain 0-based JSON array, so position 0 holds the entry for `e_1`.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 1-based lattice direction `e_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Direction(usize);

impl Direction {
    /// Panics when `j == 0`.
    pub fn new(j: usize) -> Self {
        assert!(j >= 1, "directions are 1-based");
        Direction(j)
    }

    /// Direction for a 0-based position.
    pub fn from_position(pos: usize) -> Self {
        Direction(pos + 1)
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn position(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    /// Panics on an empty entry list (r must be at least 1).
    pub fn new(entries: Vec<usize>) -> Self {
        assert!(!entries.is_empty(), "a multi-index needs r >= 1 entries");
        MultiIndex(entries)
    }

    pub fn zero(r: usize) -> Self {
        MultiIndex::new(vec![0; r])
    }

    /// `n * e_j` for a 1-based direction.
    pub fn along(r: usize, j: Direction, n: usize) -> Self {
        let mut v = vec![0; r];
        v[j.position()] = n;
        MultiIndex::new(v)
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn entry(&self, j: Direction) -> usize {
        self.0[j.position()]
    }

    pub fn max_entry(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn directions(&self) -> impl Iterator<Item = Direction> {
        (0..self.r()).map(Direction::from_position)
    }

    /// `n + e_j`.
    pub fn step_up(&self, j: Direction) -> MultiIndex {
        self.check_direction(j);
        let mut v = self.0.clone();
        v[j.position()] += 1;
        MultiIndex(v)
    }

    /// `n - e_j`, or [`Error::BelowLattice`] when entry `j` is already zero.
    pub fn step_down(&self, j: Direction) -> Result<MultiIndex> {
        self.check_direction(j);
        let mut v = self.0.clone();
        match v[j.position()].checked_sub(1) {
            Some(e) => {
                v[j.position()] = e;
                Ok(MultiIndex(v))
            }
            None => Err(Error::BelowLattice {
                index: self.clone(),
                direction: j.get(),
            }),
        }
    }

    /// Componentwise `self <= other`.
    pub fn le_componentwise(&self, other: &MultiIndex) -> bool {
        self.r() == other.r() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn check_direction(&self, j: Direction) {
        assert!(
            j.get() <= self.r(),
            "direction {} out of range for r = {}",
            j,
            self.r()
        );
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex::new(v)
    }
}

impl<const R: usize> From<[usize; R]> for MultiIndex {
    fn from(v: [usize; R]) -> Self {
        MultiIndex::new(v.to_vec())
    }
}

/// Free-function form of [`MultiIndex::step_up`].
pub fn step_up(n: &MultiIndex, j: Direction) -> MultiIndex {
    n.step_up(j)
}

/// Free-function form of [`MultiIndex::step_down`].
pub fn step_down(n: &MultiIndex, j: Direction) -> Result<MultiIndex> {
    n.step_down(j)
}

/// All multi-indices with `entries <= limits`, sorted by size and then
/// lexicographically. Every index appears after all of its lower neighbors.
pub fn enumerate_box(limits: &[usize]) -> Vec<MultiIndex> {
    assert!(!limits.is_empty(), "a box needs r >= 1 limits");
    let mut out = Vec::with_capacity(limits.iter().map(|l| l + 1).product());
    let mut cur = vec![0usize; limits.len()];
    loop {
        out.push(MultiIndex(cur.clone()));
        // odometer increment, last position fastest
        let mut pos = limits.len();
        loop {
            if pos == 0 {
                out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.0.cmp(&b.0)));
                return out;
            }
            pos -= 1;
            if cur[pos] < limits[pos] {
                cur[pos] += 1;
                break;
            }
            cur[pos] = 0;
        }
    }
}

/// Lattice box limits widened by `ring` in every direction.
pub fn widen(limits: &[usize], ring: usize) -> Vec<usize> {
    limits.iter().map(|l| l + ring).collect()
}

/// A monotone path `0 = n_0, n_1, .., n_N = n` with unit steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePath {
    steps: Vec<Direction>,
    r: usize,
}

impl LatticePath {
    pub fn new(r: usize, steps: Vec<Direction>) -> Result<Self> {
        if let Some(bad) = steps.iter().find(|d| d.get() > r) {
            return Err(Error::Precondition(format!(
                "path step {bad} out of range for r = {r}"
            )));
        }
        Ok(LatticePath { steps, r })
    }

    /// Steps `e_1` first `n_1` times, then `e_2`, and so on.
    pub fn canonical(n: &MultiIndex) -> Self {
        let steps = n
            .directions()
            .flat_map(|d| std::iter::repeat(d).take(n.entry(d)))
            .collect();
        LatticePath { steps, r: n.r() }
    }

    pub fn steps(&self) -> &[Direction] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The visited indices `n_0 = 0, .., n_N`.
    pub fn nodes(&self) -> Vec<MultiIndex> {
        let mut cur = MultiIndex::zero(self.r);
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(cur.clone());
        for &d in &self.steps {
            cur = cur.step_up(d);
            out.push(cur.clone());
        }
        out
    }

    pub fn endpoint(&self) -> MultiIndex {
        let mut v = vec![0; self.r];
        for d in &self.steps {
            v[d.position()] += 1;
        }
        MultiIndex::new(v)
    }
}

/// Number of monotone paths to `n` (the multinomial `|n|! / prod n_j!`), or
/// `None` if it does not fit in a `u128`.
pub fn path_count(n: &MultiIndex) -> Option<u128> {
    // product of binomials C(n_1 + .. + n_j, n_j)
    let mut total: u128 = 1;
    let mut run = 0u128;
    for &e in n.entries() {
        for i in 1..=e as u128 {
            run += 1;
            total = total.checked_mul(run)? / i;
        }
    }
    Some(total)
}

/// Monotone paths from the origin to `n`.
///
/// All of them (lexicographic order of step sequences) when there are at most
/// `max_count`; otherwise `max_count` distinct paths from a ChaCha8 shuffle
/// seeded with `seed`.
pub fn monotone_paths(n: &MultiIndex, max_count: usize, seed: u64) -> Vec<LatticePath> {
    assert!(max_count >= 1, "max_count must be at least 1");
    let canonical = LatticePath::canonical(n);
    let fits = path_count(n).is_some_and(|c| c <= max_count as u128);
    if fits {
        let mut out = Vec::new();
        let mut steps = canonical.steps.clone();
        loop {
            out.push(LatticePath {
                steps: steps.clone(),
                r: n.r(),
            });
            if !next_permutation(&mut steps) {
                return out;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(max_count);
    let mut steps = canonical.steps;
    while out.len() < max_count {
        steps.shuffle(&mut rng);
        if seen.insert(steps.clone()) {
            out.push(LatticePath {
                steps: steps.clone(),
                r: n.r(),
            });
        }
    }
    out
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(j: usize) -> Direction {
        Direction::new(j)
    }

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn step_up_examples() {
        assert_eq!(step_up(&mi(&[0, 0]), d(1)), mi(&[1, 0]));
        assert_eq!(step_up(&mi(&[2, 1]), d(2)), mi(&[2, 2]));
        assert_eq!(step_up(&mi(&[3, 0, 4]), d(3)), mi(&[3, 0, 5]));
    }

    #[test]
    fn step_down_examples() {
        assert_eq!(step_down(&mi(&[1, 1]), d(1)).unwrap(), mi(&[0, 1]));
        assert_eq!(step_down(&mi(&[2, 2]), d(2)).unwrap(), mi(&[2, 1]));
        assert!(matches!(
            step_down(&mi(&[0, 2]), d(1)),
            Err(Error::BelowLattice { direction: 1, .. })
        ));
    }

    #[test]
    #[should_panic]
    fn step_out_of_range_panics() {
        mi(&[1, 1]).step_up(d(3));
    }

    #[test]
    fn enumerate_box_examples() {
        assert_eq!(
            enumerate_box(&[1, 1]),
            vec![mi(&[0, 0]), mi(&[0, 1]), mi(&[1, 0]), mi(&[1, 1])]
        );
        assert_eq!(enumerate_box(&[0, 0]), vec![mi(&[0, 0])]);
        assert_eq!(enumerate_box(&[2]), vec![mi(&[0]), mi(&[1]), mi(&[2])]);
    }

    #[test]
    fn paths_small() {
        let p = monotone_paths(&mi(&[1, 1]), 100, 0);
        let steps: Vec<Vec<usize>> = p
            .iter()
            .map(|p| p.steps().iter().map(|d| d.get()).collect())
            .collect();
        assert_eq!(steps, vec![vec![1, 2], vec![2, 1]]);

        let p = monotone_paths(&mi(&[2, 0]), 100, 0);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].steps(), &[d(1), d(1)]);

        let p = monotone_paths(&mi(&[0, 0]), 5, 0);
        assert_eq!(p.len(), 1);
        assert!(p[0].is_empty());
    }

    #[test]
    fn sampled_paths_are_distinct_members_of_full_enumeration() {
        let n = mi(&[2, 2]);
        let all = monotone_paths(&n, 100, 0);
        assert_eq!(all.len(), 6);
        let sampled = monotone_paths(&n, 3, 42);
        assert_eq!(sampled.len(), 3);
        let set: BTreeSet<_> = sampled.iter().cloned().collect();
        assert_eq!(set.len(), 3);
        for p in &sampled {
            assert!(all.contains(p));
        }
        assert_eq!(sampled, monotone_paths(&n, 3, 42));
    }

    #[test]
    fn path_count_multinomial() {
        assert_eq!(path_count(&mi(&[2, 2])), Some(6));
        assert_eq!(path_count(&mi(&[1, 1, 1])), Some(6));
        assert_eq!(path_count(&mi(&[3, 2, 1])), Some(60));
        assert_eq!(path_count(&mi(&[0])), Some(1));
    }

    #[test]
    fn nodes_trace_the_path() {
        let p = LatticePath::new(2, vec![d(2), d(1), d(2)]).unwrap();
        assert_eq!(
            p.nodes(),
            vec![mi(&[0, 0]), mi(&[0, 1]), mi(&[1, 1]), mi(&[1, 2])]
        );
        assert_eq!(p.endpoint(), mi(&[1, 2]));
        assert!(LatticePath::new(2, vec![d(3)]).is_err());
    }

    #[test]
    fn serializes_as_plain_array() {
        assert_eq!(serde_json::to_string(&mi(&[2, 1])).unwrap(), "[2,1]");
        let back: MultiIndex = serde_json::from_str("[2,1]").unwrap();
        assert_eq!(back, mi(&[2, 1]));
    }

    fn arb_index() -> impl Strategy<Value = MultiIndex> {
        prop::collection::vec(0usize..5, 1..4).prop_map(MultiIndex::new)
    }

    proptest! {
        #[test]
        fn step_down_inverts_step_up(n in arb_index(), j in 0usize..3) {
            let j = Direction::from_position(j % n.r());
            prop_assert_eq!(n.step_up(j).step_down(j).unwrap(), n);
        }

        #[test]
        fn paths_have_right_step_counts(n in prop::collection::vec(0usize..4, 1..4), max in 1usize..30, seed in any::<u64>()) {
            let n = MultiIndex::new(n);
            let paths = monotone_paths(&n, max, seed);
            let expected = path_count(&n).unwrap().min(max as u128) as usize;
            prop_assert_eq!(paths.len(), expected);
            for p in &paths {
                prop_assert_eq!(p.endpoint(), n.clone());
            }
        }

        #[test]
        fn box_is_downward_closed(limits in prop::collection::vec(0usize..4, 1..4)) {
            let members = enumerate_box(&limits);
            let count: usize = limits.iter().map(|l| l + 1).product();
            prop_assert_eq!(members.len(), count);
            let set: BTreeSet<_> = members.iter().cloned().collect();
            prop_assert_eq!(set.len(), count);
            for (pos, n) in members.iter().enumerate() {
                for j in n.directions() {
                    if let Ok(lower) = n.step_down(j) {
                        let lpos = members.iter().position(|m| *m == lower);
                        prop_assert!(lpos.is_some_and(|l| l < pos));
                    }
                }
            }
        }
    }
}
