//! Perfect tangles from balanced aligned markings.
//!
//! Top-down, each step swaps an adjacent pair `a = π(s)`, `b = π(s+1)` whose
//! marks start `R` and `L` and updates the marking for `π' = π·σ(s)`.
//! Bottom-up, the cross for each step is placed on top of the tangle built
//! for `π'` so that the new segments of `a` and `b` continue the runs below.

use crate::error::{Error, Result};
use crate::heights::{raise_to_touch, HeightedCrossSet};
use crate::marking::{align, is_aligned, is_balanced, BalanceMode, Marking};
use crate::perm::Permutation;
use crate::recognize::{recognize, Verdict};
use crate::tangle::Tangle;

/// How the cross of a step is attached to the tangle below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// `π'` splits at `s`; both halves are raised to meet the cross.
    Split,
    /// Neither mark changes; the first moves of `a` and `b` share a height.
    EqualHeights,
    /// `a` loses its leading letter; the cross goes right above `b`'s first move.
    MarkingChangedA,
    /// `b` loses its leading letter; the cross goes right above `a`'s first move.
    MarkingChangedB,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildFrame {
    pub permutation: Permutation,
    pub marking: Marking,
    pub s: usize,
    pub a: usize,
    pub b: usize,
    pub placement: Placement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectTangle {
    pub tangle: Tangle,
    /// The aligned marking the tangle realises.
    pub marking: Marking,
}

fn check_frame(p: &Permutation, m: &Marking, s: usize) -> Result<(usize, usize)> {
    if s == 0 || s >= p.len() {
        return Err(Error::PositionOutOfRange {
            position: s,
            max: p.len().saturating_sub(1),
        });
    }
    let (a, b) = (p.at(s), p.at(s + 1));
    if !(m[a].starts_with_r() && m[b].starts_with_l() && a > b) {
        return Err(Error::InvariantViolation(format!(
            "step {s} of {p}: {a} marked {:?} and {b} marked {:?} do not form an R/L inversion",
            m[a].as_str(),
            m[b].as_str()
        )));
    }
    Ok((a, b))
}

/// The marking for `p·σ(s)`. An element of the swapped pair keeps its mark
/// while its class is unchanged and otherwise loses the leading letter.
pub fn marking_update(p: &Permutation, m: &Marking, s: usize) -> Result<Marking> {
    let (a, b) = check_frame(p, m, s)?;
    let before = p.classify();
    let after = p.apply_swap(s)?.classify();
    let mut out = m.clone();
    for e in [a, b] {
        if before[e] != after[e] {
            out.set(e, m[e].tail());
        }
    }
    Ok(out)
}

/// Leftmost `s` with `M(π(s))` starting `R` and `M(π(s+1))` starting `L`.
fn select_step(p: &Permutation, m: &Marking) -> Option<usize> {
    (1..p.len()).find(|&s| m[p.at(s)].starts_with_r() && m[p.at(s + 1)].starts_with_l())
}

/// The frames from `p` down to the identity, topmost first.
pub fn build_frames(p: &Permutation, m: &Marking) -> Result<Vec<BuildFrame>> {
    let mut frames = Vec::with_capacity(p.inversion_number());
    let mut current = p.clone();
    let mut marking = m.clone();
    while !current.is_identity() {
        let s = select_step(&current, &marking).ok_or_else(|| {
            Error::InvariantViolation(format!(
                "no R/L step in {current} under {}",
                marking.to_text()
            ))
        })?;
        let (a, b) = check_frame(&current, &marking, s)?;
        let next = current.apply_swap(s)?;
        let next_marking = marking_update(&current, &marking, s)?;
        debug_assert!(
            is_balanced(&next, &next_marking, BalanceMode::Full).unwrap_or(false),
            "updated marking is not balanced for {next}"
        );
        debug_assert!(
            is_aligned(&next, &next_marking),
            "updated marking is not aligned for {next}"
        );
        let placement = if next.split_at_unchecked(s) {
            Placement::Split
        } else {
            match (next_marking[a] == marking[a], next_marking[b] == marking[b]) {
                (true, true) => Placement::EqualHeights,
                (false, true) => Placement::MarkingChangedA,
                (true, false) => Placement::MarkingChangedB,
                (false, false) => {
                    return Err(Error::InvariantViolation(format!(
                        "both marks change at step {s} of {current} without a split"
                    )))
                }
            }
        };
        frames.push(BuildFrame {
            permutation: current,
            marking,
            s,
            a,
            b,
            placement,
        });
        current = next;
        marking = next_marking;
    }
    Ok(frames)
}

/// Adds the cross of `frame` on top of `below`, a drawing for `π·σ(s)`.
pub fn place_top_cross(below: HeightedCrossSet, frame: &BuildFrame) -> Result<HeightedCrossSet> {
    let s = frame.s;
    let first_move = |column: usize, who: usize| {
        below
            .first_move_of_column(column)
            .map(|c| c.height)
            .ok_or_else(|| {
                Error::InvariantViolation(format!("element {who} never moves below step {s}"))
            })
    };
    // After the swap `b` sits in column `s` and `a` in column `s + 1`.
    let height = match frame.placement {
        Placement::Split => {
            let top = below.max_height().map_or(0, |h| h + 1);
            let x = HeightedCrossSet::from_crosses([(s, top)])?;
            let (left, right) = below.split_at(s)?;
            let left = raise_to_touch(&x, left);
            let right = raise_to_touch(&x, right);
            return x.union(left)?.union(right);
        }
        Placement::EqualHeights => {
            let ha = first_move(s + 1, frame.a)?;
            let hb = first_move(s, frame.b)?;
            if ha != hb {
                return Err(Error::InvariantViolation(format!(
                    "first moves of {} and {} at heights {ha} and {hb}",
                    frame.a, frame.b
                )));
            }
            ha + 1
        }
        Placement::MarkingChangedA => first_move(s, frame.b)? + 1,
        Placement::MarkingChangedB => first_move(s + 1, frame.a)? + 1,
    };
    if let Some(c) = below
        .crosses()
        .iter()
        .find(|c| c.position.abs_diff(s) <= 1 && c.height >= height)
    {
        return Err(Error::InvariantViolation(format!(
            "cross at {s} placed at height {height} is not above ({}, {})",
            c.position, c.height
        )));
    }
    let mut out = below;
    out.insert(s, height)?;
    Ok(out)
}

/// Builds a perfect tangle realising `m`, which must be a balanced marking
/// for `p`; it is aligned first.
pub fn build_perfect_from_marking(p: &Permutation, m: &Marking) -> Result<PerfectTangle> {
    if !m.is_marking_for(p) {
        return Err(Error::NotAMarkingFor(format!("{p}")));
    }
    let marking = align(p, m)?;
    let frames = build_frames(p, &marking)?;
    let mut crosses = HeightedCrossSet::new();
    for frame in frames.iter().rev() {
        crosses = place_top_cross(crosses, frame)?;
    }
    let tangle = crosses.to_tangle(p.clone())?;
    if !tangle.solves(p) || !tangle.is_perfect()? {
        return Err(Error::InvariantViolation(format!(
            "tangle built for {p} is not perfect"
        )));
    }
    if Marking::from_tangle_marking(&tangle.marking_of()).as_ref() != Some(&marking) {
        return Err(Error::InvariantViolation(format!(
            "tangle built for {p} does not realise its marking"
        )));
    }
    Ok(PerfectTangle { tangle, marking })
}

/// Recognizes `p` and builds a perfect tangle from the recognizer's marking.
pub fn build_perfect(p: &Permutation) -> Result<PerfectTangle> {
    match recognize(p)? {
        Verdict::Perfect(m) => build_perfect_from_marking(p, &m),
        Verdict::NotPerfect(reason) => Err(Error::NotPerfect(reason)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marking::{markings_for, Mark};
    use crate::recognize::NotPerfect;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn marks(v: &[Mark]) -> Marking {
        Marking::new(v.to_vec())
    }

    #[test]
    fn identity_gives_empty_tangle() {
        let t = build_perfect(&Permutation::identity(4)).unwrap();
        assert_eq!(t.tangle.crossing_count(), 0);
    }

    #[test]
    fn transposition() {
        let t = build_perfect(&p(&[2, 1])).unwrap();
        assert_eq!(t.tangle.rows, vec![vec![], vec![1], vec![]]);
        assert_eq!(t.marking, marks(&[Mark::L, Mark::R]));
    }

    #[test]
    fn obstruction_is_reported() {
        assert!(matches!(
            build_perfect(&p(&[7, 3, 2, 4, 6, 5, 1])),
            Err(Error::NotPerfect(NotPerfect::IrregularConflict { .. }))
        ));
    }

    #[test]
    fn update_examples() {
        let m = marking_update(&p(&[2, 1]), &marks(&[Mark::L, Mark::R]), 1).unwrap();
        assert_eq!(m, marks(&[Mark::Empty, Mark::Empty]));
        let m = marking_update(&p(&[3, 1, 2]), &marks(&[Mark::L, Mark::L, Mark::R]), 1).unwrap();
        assert_eq!(m, marks(&[Mark::Empty, Mark::L, Mark::R]));
        assert!(marking_update(&p(&[3, 1, 2]), &marks(&[Mark::L, Mark::L, Mark::R]), 2).is_err());
    }

    #[test]
    fn update_keeps_switchback_marks() {
        let q = p(&[4, 3, 2, 1, 5]);
        let m = marks(&[Mark::L, Mark::LR, Mark::RL, Mark::R, Mark::Empty]);
        let next = marking_update(&q, &m, 2).unwrap();
        assert_eq!((next[3], next[2]), (Mark::RL, Mark::LR));
        let after = q.apply_swap(2).unwrap().classify();
        assert!(after[3].is_left() && after[3].is_right());
    }

    #[test]
    fn update_drops_the_leading_letter_on_class_change() {
        let q = p(&[2, 4, 3, 1, 5]);
        let m = marks(&[Mark::L, Mark::R, Mark::LR, Mark::R, Mark::Empty]);
        let next = marking_update(&q, &m, 2).unwrap();
        assert_eq!((next[4], next[3]), (Mark::R, Mark::R));
    }

    #[test]
    fn split_crosses_share_a_row() {
        let t = build_perfect(&p(&[2, 1, 4, 3])).unwrap();
        assert_eq!(t.tangle.rows, vec![vec![], vec![1, 3], vec![]]);
    }

    #[test]
    fn equal_heights_on_3412() {
        let q = p(&[3, 4, 1, 2]);
        let t = build_perfect(&q).unwrap();
        let frames = build_frames(&q, &t.marking).unwrap();
        assert!(frames
            .iter()
            .any(|f| f.placement == Placement::EqualHeights));
        assert_eq!(t.marking, marks(&[Mark::L, Mark::L, Mark::R, Mark::R]));
        assert_eq!(t.tangle.corner_count().total, 8);
    }

    #[test]
    fn every_balanced_marking_is_realised() {
        for n in 1..=5 {
            for q in Permutation::all(n) {
                for m in markings_for(&q) {
                    if is_balanced(&q, &m, BalanceMode::Full).unwrap() {
                        let t = build_perfect_from_marking(&q, &m).unwrap();
                        for (e, mark) in t.marking.iter() {
                            assert_eq!(t.tangle.corner_count().per_path[e], 2 * mark.len());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn all_of_s6_builds() {
        for q in Permutation::all(6) {
            let t = build_perfect(&q).unwrap();
            assert!(t.tangle.solves(&q));
            assert!(t.tangle.is_perfect().unwrap());
        }
    }
}
