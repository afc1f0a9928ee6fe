//! Markings, recs and the balance conditions that characterise perfect
//! permutations.
//!
//! A rec `(a, b, c, d)` is four elements appearing in this order with
//! `min(a, b) > max(c, d)`. A switchback `e` marked `RL` that sits between
//! `a` and `b` with value between `c` and `d` is a left switchback of the
//! rec; one marked `LR` between `c` and `d` with value between `a` and `b` is
//! a right switchback. A marking is balanced when every regular rec has as
//! many left as right switchbacks and every irregular rec has none.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::perm::{ElementClass, ElementMap, Permutation};
use crate::tangle::TangleMarking;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    Empty,
    L,
    R,
    LR,
    RL,
}

impl Mark {
    pub fn as_str(self) -> &'static str {
        match self {
            Mark::Empty => "",
            Mark::L => "L",
            Mark::R => "R",
            Mark::LR => "LR",
            Mark::RL => "RL",
        }
    }

    pub fn parse(s: &str) -> Option<Mark> {
        Some(match s {
            "" | "-" | "∅" => Mark::Empty,
            "L" => Mark::L,
            "R" => Mark::R,
            "LR" => Mark::LR,
            "RL" => Mark::RL,
            _ => return None,
        })
    }

    pub fn starts_with_r(self) -> bool {
        matches!(self, Mark::R | Mark::RL)
    }

    pub fn starts_with_l(self) -> bool {
        matches!(self, Mark::L | Mark::LR)
    }

    /// Number of letters, i.e. diagonal segments of the path.
    pub fn len(self) -> usize {
        self.as_str().len()
    }

    pub fn is_empty(self) -> bool {
        self == Mark::Empty
    }

    /// Drops the leading letter.
    pub fn tail(self) -> Mark {
        match self {
            Mark::RL => Mark::L,
            Mark::LR => Mark::R,
            _ => Mark::Empty,
        }
    }
}

/// A marking restricted to the five strings a perfect tangle can produce.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Marking(ElementMap<Mark>);

impl Marking {
    pub fn new(marks: Vec<Mark>) -> Self {
        Marking(ElementMap::from_vec(marks))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Mark)> + '_ {
        self.0.iter().map(|(e, &m)| (e, m))
    }

    pub fn set(&mut self, element: usize, mark: Mark) {
        self.0[element] = mark;
    }

    /// Converts a marking read off a tangle, if every string is one of the
    /// five allowed ones.
    pub fn from_tangle_marking(m: &TangleMarking) -> Option<Marking> {
        m.values()
            .iter()
            .map(|s| match s.as_str() {
                "" | "L" | "R" | "LR" | "RL" => Mark::parse(s),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Marking::new)
    }

    /// Conditions (i)-(iii): straights carry their single letter, switchbacks
    /// carry `LR` or `RL`, everything else is empty.
    pub fn is_marking_for(&self, p: &Permutation) -> bool {
        self.len() == p.len()
            && p.classify().iter().all(|(e, &class)| {
                let m = self[e];
                match class {
                    ElementClass::Neither => m == Mark::Empty,
                    ElementClass::LeftStraight => m == Mark::L,
                    ElementClass::RightStraight => m == Mark::R,
                    ElementClass::Switchback => matches!(m, Mark::LR | Mark::RL),
                }
            })
    }

    /// Text form: one `element: string` line per element, `-` for empty.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl Index<usize> for Marking {
    type Output = Mark;
    fn index(&self, element: usize) -> &Mark {
        &self.0[element]
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, m) in self.iter() {
            let s = if m.is_empty() { "-" } else { m.as_str() };
            writeln!(f, "{e}: {s}")?;
        }
        Ok(())
    }
}

/// Every marking for `p`, switchbacks enumerated as binary counters with `LR`
/// as 0 and `RL` as 1, lowest switchback first.
pub fn markings_for(p: &Permutation) -> impl Iterator<Item = Marking> {
    let classes = p.classify();
    let base: Vec<Mark> = classes
        .values()
        .iter()
        .map(|c| match c {
            ElementClass::Neither => Mark::Empty,
            ElementClass::LeftStraight => Mark::L,
            ElementClass::RightStraight => Mark::R,
            ElementClass::Switchback => Mark::LR,
        })
        .collect();
    let switchbacks: Vec<usize> = classes
        .iter()
        .filter(|(_, &c)| c == ElementClass::Switchback)
        .map(|(e, _)| e)
        .collect();
    assert!(switchbacks.len() < 64, "too many switchbacks to enumerate");
    (0u64..1 << switchbacks.len()).map(move |mask| {
        let mut marks = base.clone();
        for (bit, &e) in switchbacks.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                marks[e - 1] = Mark::RL;
            }
        }
        Marking::new(marks)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rec {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub regular: bool,
}

impl Rec {
    fn new(a: usize, b: usize, c: usize, d: usize) -> Rec {
        Rec {
            a,
            b,
            c,
            d,
            regular: a < b && c < d,
        }
    }

    pub fn elements(&self) -> [usize; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl fmt::Display for Rec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

/// All recs of `p`, ordered by the positions of their four elements.
pub fn enumerate_recs(p: &Permutation) -> Vec<Rec> {
    let v = p.entries();
    let n = v.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let low = v[i].min(v[j]);
            for k in j + 1..n {
                if v[k] >= low {
                    continue;
                }
                for l in k + 1..n {
                    if v[l] < low {
                        out.push(Rec::new(v[i], v[j], v[k], v[l]));
                    }
                }
            }
        }
    }
    out
}

fn strictly_between(x: usize, u: usize, w: usize) -> bool {
    u.min(w) < x && x < u.max(w)
}

/// Left and right switchbacks of `rec` under `m`.
pub fn switchbacks_under(
    p: &Permutation,
    m: &Marking,
    rec: &Rec,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let pos = p.positions();
    switchbacks_with(&pos, m, rec)
}

fn switchbacks_with(
    pos: &ElementMap<usize>,
    m: &Marking,
    rec: &Rec,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut left = BTreeSet::new();
    let mut right = BTreeSet::new();
    for (e, mark) in m.iter() {
        match mark {
            Mark::RL
                if pos[rec.a] < pos[e]
                    && pos[e] < pos[rec.b]
                    && strictly_between(e, rec.c, rec.d) =>
            {
                left.insert(e);
            }
            Mark::LR
                if pos[rec.c] < pos[e]
                    && pos[e] < pos[rec.d]
                    && strictly_between(e, rec.a, rec.b) =>
            {
                right.insert(e);
            }
            _ => {}
        }
    }
    (left, right)
}

/// Which recs a balance check covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BalanceMode {
    /// Every regular rec balanced, every irregular rec empty.
    Full,
    /// Only regular recs made of straight elements need to balance.
    Straight,
    /// Only minimal recs need to balance; irregular emptiness is checked via
    /// the candidate unions.
    MinimalStraight,
}

pub fn is_balanced(p: &Permutation, m: &Marking, mode: BalanceMode) -> Result<bool> {
    if !m.is_marking_for(p) {
        return Err(Error::NotAMarkingFor(format!("{p}")));
    }
    let pos = p.positions();
    let rec_ok = |rec: &Rec| {
        let (l, r) = switchbacks_with(&pos, m, rec);
        if rec.regular {
            l.len() == r.len()
        } else {
            l.is_empty() && r.is_empty()
        }
    };
    Ok(match mode {
        BalanceMode::Full => enumerate_recs(p).iter().all(rec_ok),
        BalanceMode::Straight => {
            let classes = p.classify();
            enumerate_recs(p)
                .iter()
                .filter(|r| !r.regular || r.elements().iter().all(|&e| classes[e].is_straight()))
                .all(rec_ok)
        }
        BalanceMode::MinimalStraight => {
            let sets = candidate_sets(p);
            let irregular_empty = sets.irregular_left.iter().all(|&e| m[e] != Mark::RL)
                && sets.irregular_right.iter().all(|&e| m[e] != Mark::LR);
            irregular_empty && sets.minimal.iter().all(|c| rec_ok(&c.rec))
        }
    })
}

/// Consecutive pairs (in position order) of the straights of one kind.
/// Straights of one kind always increase left to right, but the `a < b`
/// condition is kept explicit.
fn minimal_pairs(p: &Permutation, kind: ElementClass) -> Vec<(usize, usize)> {
    let classes = p.classify();
    let straights: Vec<usize> = p
        .entries()
        .iter()
        .copied()
        .filter(|&e| classes[e] == kind)
        .collect();
    straights
        .windows(2)
        .filter(|w| w[0] < w[1])
        .map(|w| (w[0], w[1]))
        .collect()
}

pub fn minimal_recs(p: &Permutation) -> Vec<Rec> {
    let pos = p.positions();
    let right = minimal_pairs(p, ElementClass::RightStraight);
    let left = minimal_pairs(p, ElementClass::LeftStraight);
    let mut out = Vec::new();
    for &(a, b) in &right {
        for &(c, d) in &left {
            if pos[b] < pos[c] && a.min(b) > c.max(d) {
                out.push(Rec::new(a, b, c, d));
            }
        }
    }
    out.sort_by_key(|r| r.elements().map(|e| pos[e]));
    out
}

/// The switchbacks that could be left or right switchbacks of one rec under
/// some marking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecCandidates {
    pub rec: Rec,
    pub left: BTreeSet<usize>,
    pub right: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSets {
    /// Candidates of every rec, in [`enumerate_recs`] order.
    pub recs: Vec<RecCandidates>,
    /// Candidates of the minimal recs, in [`minimal_recs`] order.
    pub minimal: Vec<RecCandidates>,
    pub irregular_left: BTreeSet<usize>,
    pub irregular_right: BTreeSet<usize>,
    pub regular_left: BTreeSet<usize>,
    pub regular_right: BTreeSet<usize>,
    /// Switchbacks that must be matched: `(Rℓ ∩ Rr) ∪ (Iℓ ∩ Rr) ∪ (Ir ∩ Rℓ)`.
    pub forced: BTreeSet<usize>,
}

fn rec_candidates(pos: &ElementMap<usize>, switchbacks: &[usize], rec: Rec) -> RecCandidates {
    let left = switchbacks
        .iter()
        .copied()
        .filter(|&e| {
            pos[rec.a] < pos[e] && pos[e] < pos[rec.b] && strictly_between(e, rec.c, rec.d)
        })
        .collect();
    let right = switchbacks
        .iter()
        .copied()
        .filter(|&e| {
            pos[rec.c] < pos[e] && pos[e] < pos[rec.d] && strictly_between(e, rec.a, rec.b)
        })
        .collect();
    RecCandidates { rec, left, right }
}

pub fn candidate_sets(p: &Permutation) -> CandidateSets {
    let pos = p.positions();
    let switchbacks: Vec<usize> = p
        .classify()
        .iter()
        .filter(|(_, &c)| c == ElementClass::Switchback)
        .map(|(e, _)| e)
        .collect();
    let recs: Vec<RecCandidates> = enumerate_recs(p)
        .into_iter()
        .map(|r| rec_candidates(&pos, &switchbacks, r))
        .collect();
    let minimal: Vec<RecCandidates> = minimal_recs(p)
        .into_iter()
        .map(|r| rec_candidates(&pos, &switchbacks, r))
        .collect();

    for (i, x) in minimal.iter().enumerate() {
        for y in &minimal[i + 1..] {
            assert!(
                x.left.is_disjoint(&y.left) && x.right.is_disjoint(&y.right),
                "minimal recs {} and {} of {p} share candidates",
                x.rec,
                y.rec
            );
        }
    }

    let union = |regular: bool, left: bool| -> BTreeSet<usize> {
        recs.iter()
            .filter(|c| c.rec.regular == regular)
            .flat_map(|c| if left { c.left.iter() } else { c.right.iter() })
            .copied()
            .collect()
    };
    let irregular_left = union(false, true);
    let irregular_right = union(false, false);
    let regular_left = union(true, true);
    let regular_right = union(true, false);
    let mut forced: BTreeSet<usize> = regular_left.intersection(&regular_right).copied().collect();
    forced.extend(irregular_left.intersection(&regular_right));
    forced.extend(irregular_right.intersection(&regular_left));
    CandidateSets {
        recs,
        minimal,
        irregular_left,
        irregular_right,
        regular_left,
        regular_right,
        forced,
    }
}

/// Every adjacent pair whose marks start `R` then `L` is an inversion.
pub fn is_aligned(p: &Permutation, m: &Marking) -> bool {
    p.entries()
        .windows(2)
        .all(|w| !(m[w[0]].starts_with_r() && m[w[1]].starts_with_l()) || w[0] > w[1])
}

/// Aligns a balanced marking by repeatedly exchanging the marks of the
/// leftmost offending pair `a, a+1` from `RL, LR` to `LR, RL`.
pub fn align(p: &Permutation, m: &Marking) -> Result<Marking> {
    Ok(align_steps(p, m)?.pop().expect("trace holds the input"))
}

/// The markings visited by [`align`], starting with `m` itself.
pub fn align_steps(p: &Permutation, m: &Marking) -> Result<Vec<Marking>> {
    if !is_balanced(p, m, BalanceMode::Full)? {
        return Err(Error::NotBalancedInput);
    }
    let mut trace = vec![m.clone()];
    let mut current = m.clone();
    while let Some(w) = p
        .entries()
        .windows(2)
        .find(|w| current[w[0]].starts_with_r() && current[w[1]].starts_with_l() && w[0] < w[1])
    {
        let (a, b) = (w[0], w[1]);
        if b != a + 1 || current[a] != Mark::RL || current[b] != Mark::LR {
            return Err(Error::InvariantViolation(format!(
                "misaligned pair {a},{b} of {p} is not a consecutive RL/LR pair"
            )));
        }
        current.set(a, Mark::LR);
        current.set(b, Mark::RL);
        trace.push(current.clone());
    }
    Ok(trace)
}
