//! Direct tangles (every path has at most one diagonal segment) for
//! 321-avoiding permutations.
//!
//! The builder peels one inversion at a time from the top: it swaps a
//! descent `s`, solves the rest, and then raises the remainder so that the
//! two segments of the new cross continue existing segments. If the
//! remainder splits at `s`, its two halves are raised independently.

use crate::error::{Error, Result};
use crate::heights::{raise_to_touch, shift_to_touch, HeightedCrossSet};
use crate::perm::Permutation;
use crate::tangle::Tangle;

/// Builds a direct tangle for `p`, using the leftmost descent at every step.
pub fn build_direct(p: &Permutation) -> Result<Tangle> {
    build(p, None)
}

/// As [`build_direct`], but the first (topmost) swap is at descent `s`.
pub fn build_direct_from_descent(p: &Permutation, s: usize) -> Result<Tangle> {
    if !p.is_descent(s) {
        return Err(Error::PositionOutOfRange {
            position: s,
            max: p.len() - 1,
        });
    }
    build(p, Some(s))
}

fn build(p: &Permutation, first: Option<usize>) -> Result<Tangle> {
    if let Some(positions) = p.find_321() {
        return Err(Error::Contains321 {
            positions,
            values: positions.map(|i| p.at(i)),
        });
    }
    let mut frames = Vec::with_capacity(p.inversion_number());
    let mut current = p.clone();
    let mut forced = first;
    while !current.is_identity() {
        let s = forced
            .take()
            .unwrap_or_else(|| (1..current.len()).find(|&s| current.is_descent(s)).unwrap());
        current.swap_in_place(s);
        frames.push(s);
    }

    // `current` is now the identity; assemble bottom-up.
    let mut crosses = HeightedCrossSet::new();
    for &s in frames.iter().rev() {
        let below = current.clone();
        current.swap_in_place(s);
        let top = crosses.max_height().map_or(0, |h| h + 1);
        let x = HeightedCrossSet::from_crosses([(s, top)])?;
        crosses = if below.split_at_unchecked(s) {
            let (left, right) = crosses.split_at(s)?;
            let merged = shift_to_touch(&x, left)?;
            shift_to_touch(&merged, right)?
        } else {
            let sub = raise_to_touch(&x, crosses);
            debug_assert!(
                {
                    let h = |j| sub.topmost_at(j);
                    h(s - 1) == Some(top - 1) && h(s + 1) == Some(top - 1) && h(s) == Some(top - 2)
                },
                "unsplit remainder must touch the cross on both sides (s = {s}, {below})"
            );
            x.union(sub)?
        };
    }
    crosses.to_tangle(p.clone())
}
