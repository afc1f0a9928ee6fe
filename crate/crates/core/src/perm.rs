//! Permutations in one-line notation, with 1-based positions and values.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Values indexed by element `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementMap<T>(Vec<T>);

impl<T> ElementMap<T> {
    pub fn from_vec(values: Vec<T>) -> Self {
        ElementMap(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Iterates `(element, value)` pairs in element order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &T)> {
        self.0.iter().enumerate().map(|(i, v)| (i + 1, v))
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }
}

impl<T: Clone> ElementMap<T> {
    pub fn filled(n: usize, value: T) -> Self {
        ElementMap(vec![value; n])
    }
}

impl<T> Index<usize> for ElementMap<T> {
    type Output = T;
    fn index(&self, element: usize) -> &T {
        &self.0[element - 1]
    }
}

impl<T> IndexMut<usize> for ElementMap<T> {
    fn index_mut(&mut self, element: usize) -> &mut T {
        &mut self.0[element - 1]
    }
}

/// A permutation `[π(1), …, π(n)]` of `{1, …, n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementClass {
    Neither,
    LeftStraight,
    RightStraight,
    Switchback,
}

impl ElementClass {
    pub fn is_left(self) -> bool {
        matches!(self, ElementClass::LeftStraight | ElementClass::Switchback)
    }

    pub fn is_right(self) -> bool {
        matches!(self, ElementClass::RightStraight | ElementClass::Switchback)
    }

    pub fn is_straight(self) -> bool {
        matches!(
            self,
            ElementClass::LeftStraight | ElementClass::RightStraight
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ElementClass::Neither => "neither",
            ElementClass::LeftStraight => "left-straight",
            ElementClass::RightStraight => "right-straight",
            ElementClass::Switchback => "switchback",
        }
    }
}

impl Permutation {
    /// Builds a permutation from one-line notation, checking it is a bijection.
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n];
        for &v in &entries {
            if v == 0 || v > n {
                return Err(Error::NotABijection {
                    n,
                    detail: format!("value {v} out of range"),
                });
            }
            if seen[v - 1] {
                return Err(Error::NotABijection {
                    n,
                    detail: format!("value {v} repeated"),
                });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity of size 0");
        Permutation {
            entries: (1..=n).collect(),
        }
    }

    /// Parses whitespace- or comma-separated integers.
    pub fn parse(text: &str) -> Result<Self> {
        let entries = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidToken(t.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// `π(position)` for a 1-based position.
    pub fn at(&self, position: usize) -> usize {
        self.entries[position - 1]
    }

    /// Positions of each element: `positions()[e]` is `π⁻¹(e)`.
    pub fn positions(&self) -> ElementMap<usize> {
        let mut pos = ElementMap::filled(self.len(), 0);
        for (i, &v) in self.entries.iter().enumerate() {
            pos[v] = i + 1;
        }
        pos
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// All inversions `(a, b)` with `a > b` and `a` before `b`, ordered by the
    /// position of `a` and then of `b`.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &a) in self.entries.iter().enumerate() {
            for &b in &self.entries[i + 1..] {
                if a > b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn inversion_number(&self) -> usize {
        let mut count = 0;
        for (i, &a) in self.entries.iter().enumerate() {
            count += self.entries[i + 1..].iter().filter(|&&b| b < a).count();
        }
        count
    }

    /// `π·σ(s)`: exchanges the entries at positions `s` and `s + 1`.
    pub fn apply_swap(&self, s: usize) -> Result<Self> {
        let n = self.len();
        if s == 0 || s >= n {
            return Err(Error::PositionOutOfRange {
                position: s,
                max: n.saturating_sub(1),
            });
        }
        let mut entries = self.entries.clone();
        entries.swap(s - 1, s);
        Ok(Permutation { entries })
    }

    pub(crate) fn swap_in_place(&mut self, s: usize) {
        self.entries.swap(s - 1, s);
    }

    pub fn is_descent(&self, s: usize) -> bool {
        s >= 1 && s < self.len() && self.entries[s - 1] > self.entries[s]
    }

    /// Whether `mu` occurs as an order-isomorphic subsequence.
    pub fn contains_pattern(&self, mu: &Permutation) -> Result<bool> {
        if mu.len() > self.len() {
            return Err(Error::PatternLargerThanHost {
                pattern: mu.len(),
                host: self.len(),
            });
        }
        if mu.entries == [3, 2, 1] {
            return Ok(self.find_321().is_some());
        }
        let mut chosen = Vec::with_capacity(mu.len());
        Ok(self.extend_pattern(&mu.entries, 0, &mut chosen))
    }

    fn extend_pattern(&self, mu: &[usize], from: usize, chosen: &mut Vec<usize>) -> bool {
        let r = chosen.len();
        if r == mu.len() {
            return true;
        }
        let remaining = mu.len() - r;
        for i in from..=self.len() - remaining {
            let v = self.entries[i];
            let consistent = chosen
                .iter()
                .enumerate()
                .all(|(q, &j)| (self.entries[j] < v) == (mu[q] < mu[r]));
            if consistent {
                chosen.push(i);
                if self.extend_pattern(mu, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// Positions `(i, j, k)`, 1-based, of a 321 occurrence, if any. Uses the
    /// middle element with the largest earlier value and smallest later one.
    pub fn find_321(&self) -> Option<[usize; 3]> {
        let n = self.len();
        if n < 3 {
            return None;
        }
        let mut suffix_min = vec![0usize; n];
        suffix_min[n - 1] = n - 1;
        for i in (0..n - 1).rev() {
            let next = suffix_min[i + 1];
            suffix_min[i] = if self.entries[i] < self.entries[next] {
                i
            } else {
                next
            };
        }
        let mut prefix_max = 0usize;
        for j in 1..n - 1 {
            let k = suffix_min[j + 1];
            if self.entries[prefix_max] > self.entries[j] && self.entries[j] > self.entries[k] {
                return Some([prefix_max + 1, j + 1, k + 1]);
            }
            if self.entries[j] > self.entries[prefix_max] {
                prefix_max = j;
            }
        }
        None
    }

    /// Classifies every element as left/right straight, switchback or neither.
    pub fn classify(&self) -> ElementMap<ElementClass> {
        let n = self.len();
        let mut left = vec![false; n + 1];
        let mut right = vec![false; n + 1];
        let mut max_before = 0;
        for &v in &self.entries {
            left[v] = max_before > v;
            max_before = max_before.max(v);
        }
        let mut min_after = usize::MAX;
        for &v in self.entries.iter().rev() {
            right[v] = min_after < v;
            min_after = min_after.min(v);
        }
        ElementMap::from_vec(
            (1..=n)
                .map(|e| match (left[e], right[e]) {
                    (false, false) => ElementClass::Neither,
                    (true, false) => ElementClass::LeftStraight,
                    (false, true) => ElementClass::RightStraight,
                    (true, true) => ElementClass::Switchback,
                })
                .collect(),
        )
    }

    /// Whether `π(1..=k) ⊆ {1..k}`.
    pub fn has_split(&self, k: usize) -> Result<bool> {
        if k == 0 || k >= self.len() {
            return Err(Error::LocationOutOfRange {
                location: k,
                max: self.len().saturating_sub(1),
            });
        }
        Ok(self.split_at_unchecked(k))
    }

    pub(crate) fn split_at_unchecked(&self, k: usize) -> bool {
        self.entries[..k].iter().all(|&v| v <= k)
    }

    /// Iterates `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: (n >= 1).then(|| (1..=n).collect()),
        }
    }
}

/// The member of the `4k`-element family whose minimum corner count drops
/// when crossings are allowed to repeat.
pub fn family_example(k: usize) -> Result<Permutation> {
    if k < 4 {
        return Err(Error::KTooSmall(k));
    }
    let half = |offset: usize| {
        let mut v = vec![offset + 2 * k];
        for j in 1..k {
            v.push(offset + 2 * j + 1);
            v.push(offset + 2 * j);
        }
        v.push(offset + 1);
        v
    };
    let mut entries = half(0);
    entries.extend(half(2 * k));
    Permutation::new(entries)
}

pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut v = current.clone();
        let n = v.len();
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
                v.swap(i, j);
                v[i + 1..].reverse();
                self.next = Some(v);
            }
        }
        Some(Permutation { entries: current })
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
