//! Crosses placed at integer heights, the working form of both builders.
//! Heights grow upward; the topmost cross is the first swap of the tangle.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tangle::Tangle;

/// A swap at `position` drawn at `height`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cross {
    pub position: usize,
    pub height: i64,
}

/// Crosses with heights. Two crosses whose positions differ by less than 2
/// never share a height, and their relative height fixes their order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeightedCrossSet {
    crosses: Vec<Cross>,
}

impl HeightedCrossSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_crosses(crosses: impl IntoIterator<Item = (usize, i64)>) -> Result<Self> {
        let mut set = Self::new();
        for (position, height) in crosses {
            set.insert(position, height)?;
        }
        Ok(set)
    }

    /// Row `r` of the tangle becomes height `-r`.
    pub fn from_tangle(t: &Tangle) -> Self {
        let crosses = t
            .rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| {
                row.iter().map(move |&position| Cross {
                    position,
                    height: -(r as i64),
                })
            })
            .collect();
        HeightedCrossSet { crosses }
    }

    pub fn crosses(&self) -> &[Cross] {
        &self.crosses
    }

    pub fn len(&self) -> usize {
        self.crosses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crosses.is_empty()
    }

    pub fn insert(&mut self, position: usize, height: i64) -> Result<()> {
        if let Some(c) = self
            .crosses
            .iter()
            .find(|c| c.height == height && c.position.abs_diff(position) < 2)
        {
            return Err(Error::InvariantViolation(format!(
                "cross ({position}, {height}) overlaps ({}, {})",
                c.position, c.height
            )));
        }
        self.crosses.push(Cross { position, height });
        Ok(())
    }

    pub fn max_height(&self) -> Option<i64> {
        self.crosses.iter().map(|c| c.height).max()
    }

    /// Height of the topmost cross at `position`, the `h_j` of the builders.
    pub fn topmost_at(&self, position: usize) -> Option<i64> {
        self.crosses
            .iter()
            .filter(|c| c.position == position)
            .map(|c| c.height)
            .max()
    }

    /// Topmost cross moving the element that starts in `column`: the first
    /// cross at `column - 1` (a left move) or at `column` (a right move).
    pub fn first_move_of_column(&self, column: usize) -> Option<Cross> {
        self.crosses
            .iter()
            .filter(|c| c.position == column || c.position + 1 == column)
            .max_by_key(|c| c.height)
            .copied()
    }

    pub fn translate(&mut self, dh: i64) {
        for c in &mut self.crosses {
            c.height += dh;
        }
    }

    /// Splits into crosses left of `s` and right of `s`; none may sit at `s`.
    pub fn split_at(&self, s: usize) -> Result<(HeightedCrossSet, HeightedCrossSet)> {
        if self.crosses.iter().any(|c| c.position == s) {
            return Err(Error::InvariantViolation(format!(
                "split at {s} crossed by a swap"
            )));
        }
        let (left, right): (Vec<Cross>, Vec<Cross>) =
            self.crosses.iter().partition(|c| c.position < s);
        Ok((
            HeightedCrossSet { crosses: left },
            HeightedCrossSet { crosses: right },
        ))
    }

    pub fn union(mut self, other: HeightedCrossSet) -> Result<Self> {
        for c in other.crosses {
            self.insert(c.position, c.height)?;
        }
        Ok(self)
    }

    /// Rows top to bottom, one per distinct height, framed by the two empty
    /// boundary rows.
    pub fn to_tangle(&self, start: Permutation) -> Result<Tangle> {
        let heights: BTreeSet<i64> = self.crosses.iter().map(|c| c.height).collect();
        let mut rows = vec![vec![]];
        for &h in heights.iter().rev() {
            let mut row: Vec<usize> = self
                .crosses
                .iter()
                .filter(|c| c.height == h)
                .map(|c| c.position)
                .collect();
            row.sort_unstable();
            rows.push(row);
        }
        rows.push(vec![]);
        Tangle::new(start, rows)
    }
}

/// Raises (or lowers) `sub` as far as it can go while each of its crosses
/// stays strictly below every cross of `base` within one position of it.
/// Without such neighbouring pairs the two tops are aligned; an empty `base`
/// leaves `sub` in place.
pub fn raise_to_touch(base: &HeightedCrossSet, sub: HeightedCrossSet) -> HeightedCrossSet {
    let (Some(base_top), Some(sub_top)) = (base.max_height(), sub.max_height()) else {
        return sub;
    };
    let shift = base
        .crosses
        .iter()
        .flat_map(|b| {
            sub.crosses
                .iter()
                .filter(move |c| c.position.abs_diff(b.position) <= 1)
                .map(move |c| b.height - 1 - c.height)
        })
        .min()
        .unwrap_or(base_top - sub_top);
    let mut sub = sub;
    sub.translate(shift);
    sub
}

/// [`raise_to_touch`] followed by the union with `base`.
pub fn shift_to_touch(base: &HeightedCrossSet, sub: HeightedCrossSet) -> Result<HeightedCrossSet> {
    base.clone().union(raise_to_touch(base, sub))
}
