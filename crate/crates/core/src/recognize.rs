//! Deciding perfection: a balanced marking is assembled from the straights,
//! the irregular recs, and a maximum matching between the left and right
//! switchback candidates of the minimal recs.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::marking::{candidate_sets, is_balanced, BalanceMode, CandidateSets, Mark, Marking};
use crate::matching::{max_vertex_weight_matching, MatchGraph};
use crate::perm::{ElementClass, Permutation};

/// Why no balanced marking exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotPerfect {
    /// These switchbacks would have to be both a left and a right switchback
    /// of irregular recs.
    IrregularConflict { elements: Vec<usize> },
    /// The matching covers `weight` of the `required` forced switchbacks.
    MatchingDeficit { weight: usize, required: usize },
}

impl fmt::Display for NotPerfect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotPerfect::IrregularConflict { elements } => {
                write!(f, "irregular recs conflict on switchbacks {elements:?}")
            }
            NotPerfect::MatchingDeficit { weight, required } => {
                write!(
                    f,
                    "matching covers {weight} of {required} forced switchbacks"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Perfect(Marking),
    NotPerfect(NotPerfect),
}

impl Verdict {
    pub fn is_perfect(&self) -> bool {
        matches!(self, Verdict::Perfect(_))
    }

    pub fn marking(&self) -> Option<&Marking> {
        match self {
            Verdict::Perfect(m) => Some(m),
            Verdict::NotPerfect(_) => None,
        }
    }
}

/// The matching graph on `Rℓ ∪ Rr`, weighting the forced switchbacks.
/// Edges run from a left candidate to a right candidate of the same minimal
/// rec, skipping candidates already fixed by irregular recs.
pub fn build_graph(sets: &CandidateSets) -> MatchGraph {
    let mut g = MatchGraph::new();
    for &v in sets.regular_left.union(&sets.regular_right) {
        g.add_vertex(v, u8::from(sets.forced.contains(&v)));
    }
    for c in &sets.minimal {
        for &i in c.left.difference(&sets.irregular_left) {
            for &j in c.right.difference(&sets.irregular_right) {
                g.add_edge(i, j, Some(c.rec));
            }
        }
    }
    g
}

pub fn recognize(p: &Permutation) -> Result<Verdict> {
    let classes = p.classify();
    let mut marks: Vec<Option<Mark>> = classes
        .values()
        .iter()
        .map(|c| match c {
            ElementClass::Neither => Some(Mark::Empty),
            ElementClass::LeftStraight => Some(Mark::L),
            ElementClass::RightStraight => Some(Mark::R),
            ElementClass::Switchback => None,
        })
        .collect();

    let sets = candidate_sets(p);
    let conflict: Vec<usize> = sets
        .irregular_left
        .intersection(&sets.irregular_right)
        .copied()
        .collect();
    if !conflict.is_empty() {
        return Ok(Verdict::NotPerfect(NotPerfect::IrregularConflict {
            elements: conflict,
        }));
    }
    for &i in &sets.irregular_left {
        marks[i - 1] = Some(Mark::LR);
    }
    for &i in &sets.irregular_right {
        marks[i - 1] = Some(Mark::RL);
    }

    let graph = build_graph(&sets);
    let matching = max_vertex_weight_matching(&graph);
    if matching.weight < sets.forced.len() {
        return Ok(Verdict::NotPerfect(NotPerfect::MatchingDeficit {
            weight: matching.weight,
            required: sets.forced.len(),
        }));
    }

    for e in &matching.edges {
        for (v, want) in [(e.left, Mark::RL), (e.right, Mark::LR)] {
            match marks[v - 1] {
                None => marks[v - 1] = Some(want),
                Some(m) if m == want => {}
                Some(m) => {
                    return Err(Error::InvariantViolation(format!(
                        "matched edge ({}, {}) wants {v} = {} but it is {}",
                        e.left,
                        e.right,
                        want.as_str(),
                        m.as_str()
                    )))
                }
            }
        }
    }

    let both: BTreeSet<usize> = sets
        .regular_left
        .intersection(&sets.regular_right)
        .copied()
        .collect();
    for (idx, slot) in marks.iter_mut().enumerate() {
        let v = idx + 1;
        if slot.is_none() {
            if both.contains(&v) {
                return Err(Error::InvariantViolation(format!(
                    "switchback {v} lies in both regular candidate sets but was left unmatched"
                )));
            }
            *slot = Some(if sets.regular_right.contains(&v) {
                Mark::RL
            } else {
                Mark::LR
            });
        }
    }

    let marking = Marking::new(
        marks
            .into_iter()
            .map(|m| m.expect("all assigned"))
            .collect(),
    );
    if !is_balanced(p, &marking, BalanceMode::Full)? {
        return Err(Error::InvariantViolation(format!(
            "recognizer marking for {p} is not balanced"
        )));
    }
    Ok(Verdict::Perfect(marking))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusPredicate {
    Perfect,
    Direct,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub total: usize,
    /// `None` when the predicate did not ask for it.
    pub perfect: Option<usize>,
    pub direct: Option<usize>,
    /// Permutations failing the recognizer, in lexicographic order.
    pub non_perfect: Vec<Permutation>,
}

pub const DEFAULT_CENSUS_BOUND: usize = 8;

/// Runs over `Sₙ` in lexicographic order.
pub fn census(n: usize, predicate: CensusPredicate, bound: usize) -> Result<Census> {
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    if n == 0 {
        return Err(Error::Empty);
    }
    let want_perfect = predicate != CensusPredicate::Direct;
    let want_direct = predicate != CensusPredicate::Perfect;
    let mut out = Census {
        n,
        total: 0,
        perfect: want_perfect.then_some(0),
        direct: want_direct.then_some(0),
        non_perfect: Vec::new(),
    };
    for p in Permutation::all(n) {
        out.total += 1;
        if want_direct && p.find_321().is_none() {
            *out.direct.as_mut().unwrap() += 1;
        }
        if want_perfect {
            if recognize(&p)?.is_perfect() {
                *out.perfect.as_mut().unwrap() += 1;
            } else {
                out.non_perfect.push(p);
            }
        }
    }
    Ok(out)
}
