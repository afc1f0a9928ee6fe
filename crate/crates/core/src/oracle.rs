//! Brute-force ground truth for small inputs.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::marking::{Mark, Marking};
use crate::perm::Permutation;
use crate::tangle::{Direction, Tangle};

pub const MIN_CORNERS_MAX_N: usize = 6;
pub const MAX_VISITED_STATES: usize = 50_000_000;
pub const MAX_SWITCHBACKS: usize = 24;

/// A permutation with the direction each element moved in on the last row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct SearchState(u64);

const DIRECTIONS: [Direction; 3] = [Direction::V, Direction::L, Direction::R];

impl SearchState {
    // Four bits per entry, then two bits per element's direction.
    fn encode(perm: &[u8], dirs: &[u8]) -> Self {
        let mut code = 0u64;
        for &v in perm {
            code = code << 4 | v as u64;
        }
        for &d in dirs {
            code = code << 2 | d as u64;
        }
        SearchState(code)
    }

    fn decode(self, n: usize, perm: &mut [u8], dirs: &mut [u8]) {
        let mut code = self.0;
        for d in dirs.iter_mut().rev() {
            *d = (code & 3) as u8;
            code >>= 2;
        }
        for v in perm.iter_mut().rev() {
            *v = (code & 15) as u8;
            code >>= 4;
        }
        debug_assert_eq!(perm.len(), n);
    }
}

/// Every set of pairwise non-overlapping swap positions in `1..n`, as bit
/// masks over positions, including the empty set.
fn independent_rows(n: usize) -> Vec<u32> {
    (0u32..1 << n.saturating_sub(1))
        .filter(|m| m & (m >> 1) == 0)
        .map(|m| m << 1)
        .collect()
}

/// The least number of corners over all tangles solving `p`, or over simple
/// tangles only when `simple_only` is set.
pub fn min_corners(p: &Permutation, simple_only: bool) -> Result<usize> {
    let n = p.len();
    if n > MIN_CORNERS_MAX_N {
        return Err(Error::SizeGuard(format!(
            "min_corners needs n <= {MIN_CORNERS_MAX_N}, got {n}"
        )));
    }
    let rows = independent_rows(n);
    let start_perm: Vec<u8> = p.entries().iter().map(|&v| v as u8).collect();
    let goal_perm: Vec<u8> = (1..=n as u8).collect();
    let vertical = vec![0u8; n];
    let start = SearchState::encode(&start_perm, &vertical);
    let goal = SearchState::encode(&goal_perm, &vertical);

    let mut best: HashMap<SearchState, usize> = HashMap::from([(start, 0)]);
    let mut queue = BinaryHeap::from([Reverse((0usize, start.0))]);
    let mut perm = vec![0u8; n];
    let mut dirs = vec![0u8; n];
    let mut next_perm = vec![0u8; n];
    let mut next_dirs = vec![0u8; n];
    while let Some(Reverse((cost, code))) = queue.pop() {
        let state = SearchState(code);
        if state == goal {
            return Ok(cost);
        }
        if best.get(&state).is_some_and(|&c| c < cost) {
            continue;
        }
        state.decode(n, &mut perm, &mut dirs);
        'rows: for &row in &rows {
            next_perm.copy_from_slice(&perm);
            next_dirs.iter_mut().for_each(|d| *d = 0);
            for s in 1..n {
                if row >> s & 1 == 1 {
                    let (left, right) = (perm[s - 1], perm[s]);
                    if simple_only && left < right {
                        continue 'rows;
                    }
                    next_perm.swap(s - 1, s);
                    next_dirs[left as usize - 1] = 2;
                    next_dirs[right as usize - 1] = 1;
                }
            }
            let step: usize = dirs
                .iter()
                .zip(&next_dirs)
                .map(|(&d, &e)| DIRECTIONS[d as usize].turn_cost(DIRECTIONS[e as usize]))
                .sum();
            let next = SearchState::encode(&next_perm, &next_dirs);
            let total = cost + step;
            if best.get(&next).is_none_or(|&c| total < c) {
                if best.len() >= MAX_VISITED_STATES {
                    return Err(Error::SizeGuard(format!(
                        "search visited {MAX_VISITED_STATES} states"
                    )));
                }
                best.insert(next, total);
                queue.push(Reverse((total, next.0)));
            }
        }
    }
    Err(Error::InvariantViolation(format!(
        "no tangle found for {p}"
    )))
}

/// Scans all markings for `p` (straights forced, each switchback `LR` or
/// `RL`) and returns the first one that is balanced. Switchbacks are taken
/// in increasing order as the bits of a counter, `LR` for 0 and `RL` for 1.
pub fn balanced_marking_bruteforce(p: &Permutation) -> Result<Option<Marking>> {
    let v = p.entries();
    let n = v.len();
    let pos: Vec<usize> = {
        let mut pos = vec![0; n + 1];
        for (i, &e) in v.iter().enumerate() {
            pos[e] = i;
        }
        pos
    };
    let has_larger_before = |e: usize| v[..pos[e]].iter().any(|&x| x > e);
    let has_smaller_after = |e: usize| v[pos[e] + 1..].iter().any(|&x| x < e);

    let mut marks = vec![Mark::Empty; n];
    let mut switchbacks = Vec::new();
    for e in 1..=n {
        marks[e - 1] = match (has_larger_before(e), has_smaller_after(e)) {
            (true, true) => {
                switchbacks.push(e);
                Mark::LR
            }
            (true, false) => Mark::L,
            (false, true) => Mark::R,
            (false, false) => Mark::Empty,
        };
    }
    if switchbacks.len() > MAX_SWITCHBACKS {
        return Err(Error::SizeGuard(format!(
            "{} switchbacks exceed the limit of {MAX_SWITCHBACKS}",
            switchbacks.len()
        )));
    }

    // Per rec: which switchbacks would be a left switchback if marked RL and
    // which a right switchback if marked LR.
    let between = |x: usize, u: usize, w: usize| u.min(w) < x && x < u.max(w);
    let mut constraints: Vec<(bool, u32, u32)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let (a, b, c, d) = (v[i], v[j], v[k], v[l]);
                    if a.min(b) <= c.max(d) {
                        continue;
                    }
                    let mut left = 0u32;
                    let mut right = 0u32;
                    for (bit, &e) in switchbacks.iter().enumerate() {
                        let q = pos[e];
                        if i < q && q < j && between(e, c, d) {
                            left |= 1 << bit;
                        }
                        if k < q && q < l && between(e, a, b) {
                            right |= 1 << bit;
                        }
                    }
                    constraints.push((a < b && c < d, left, right));
                }
            }
        }
    }

    let all = if switchbacks.is_empty() {
        0
    } else {
        u32::MAX >> (32 - switchbacks.len())
    };
    for rl in 0..=all {
        let ok = constraints.iter().all(|&(regular, left, right)| {
            let l = left & rl;
            let r = right & !rl;
            if regular {
                l.count_ones() == r.count_ones()
            } else {
                l == 0 && r == 0
            }
        });
        if ok {
            for (bit, &e) in switchbacks.iter().enumerate() {
                marks[e - 1] = if rl >> bit & 1 == 1 {
                    Mark::RL
                } else {
                    Mark::LR
                };
            }
            return Ok(Some(Marking::new(marks)));
        }
    }
    Ok(None)
}

/// A random simple tangle for `p`: each row swaps a random non-empty set of
/// non-overlapping descents, with the occasional empty row in between.
pub fn random_simple_tangle(p: &Permutation, seed: u64) -> Tangle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = p.clone();
    let mut rows = vec![vec![]];
    while !current.is_identity() {
        if rng.gen_bool(0.1) {
            rows.push(vec![]);
        }
        let mut descents: Vec<usize> = (1..current.len())
            .filter(|&s| current.is_descent(s))
            .collect();
        descents.shuffle(&mut rng);
        let mut row: Vec<usize> = Vec::new();
        for (i, &s) in descents.iter().enumerate() {
            let free = row.iter().all(|&t: &usize| t.abs_diff(s) >= 2);
            if free && (i == 0 || rng.gen_bool(0.5)) {
                row.push(s);
            }
        }
        row.sort_unstable();
        for &s in &row {
            current.swap_in_place(s);
        }
        rows.push(row);
    }
    rows.push(vec![]);
    Tangle::new(p.clone(), rows).expect("generated rows are valid")
}
