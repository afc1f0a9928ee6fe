//! Tangles: a start permutation and a schedule of rows of non-overlapping
//! adjacent swaps, together with the geometry of the paths they induce.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::{ElementMap, Permutation};

/// Direction of a path during one row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    V,
    L,
    R,
}

impl Direction {
    /// Corners incurred when a path changes from `self` to `next`.
    pub fn turn_cost(self, next: Direction) -> usize {
        match (self, next) {
            (a, b) if a == b => 0,
            (Direction::L, Direction::R) | (Direction::R, Direction::L) => 2,
            _ => 1,
        }
    }
}

/// Marking read off a tangle: one letter per maximal diagonal run.
pub type TangleMarking = ElementMap<String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tangle {
    pub start: Permutation,
    /// Swap positions per row, 1-based and strictly increasing.
    pub rows: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathGeometry {
    /// Column of each element at times `0..=rows`.
    pub columns: ElementMap<Vec<usize>>,
    /// Direction of each element during each row.
    pub directions: ElementMap<Vec<Direction>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerCount {
    pub total: usize,
    pub per_path: ElementMap<usize>,
}

impl Tangle {
    pub fn new(start: Permutation, rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = Tangle { start, rows };
        t.validate()?;
        Ok(t)
    }

    /// The two-row tangle that leaves every path vertical.
    pub fn vertical(start: Permutation) -> Self {
        Tangle {
            start,
            rows: vec![vec![], vec![]],
        }
    }

    pub fn n(&self) -> usize {
        self.start.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::NoRows);
        }
        if !self.rows[0].is_empty() || !self.rows[self.rows.len() - 1].is_empty() {
            return Err(Error::NonEmptyBoundaryRow);
        }
        let max = self.n() - 1;
        for (r, row) in self.rows.iter().enumerate() {
            for &p in row {
                if p == 0 || p > max {
                    return Err(Error::PositionOutOfRange { position: p, max });
                }
            }
            for w in row.windows(2) {
                if w[1] <= w[0] {
                    return Err(if w[1] == w[0] {
                        Error::OverlappingSwaps { row: r }
                    } else {
                        Error::UnsortedRow { row: r }
                    });
                }
                if w[1] - w[0] < 2 {
                    return Err(Error::OverlappingSwaps { row: r });
                }
            }
        }
        Ok(())
    }

    /// The permutations before and after each row, starting at `start`.
    pub fn permutation_sequence(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.rows.len() + 1);
        let mut current = self.start.clone();
        out.push(current.clone());
        for row in &self.rows {
            for &s in row {
                current.swap_in_place(s);
            }
            out.push(current.clone());
        }
        out
    }

    pub fn final_permutation(&self) -> Permutation {
        let mut current = self.start.clone();
        for row in &self.rows {
            for &s in row {
                current.swap_in_place(s);
            }
        }
        current
    }

    pub fn solves(&self, p: &Permutation) -> bool {
        &self.start == p && self.final_permutation().is_identity()
    }

    pub fn crossing_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Crossings per unordered pair of elements `(larger, smaller)`.
    pub fn pair_crossings(&self) -> HashMap<(usize, usize), usize> {
        let mut counts = HashMap::new();
        let mut current = self.start.clone();
        for row in &self.rows {
            for &s in row {
                let (x, y) = (current.at(s), current.at(s + 1));
                *counts.entry((x.max(y), x.min(y))).or_insert(0) += 1;
                current.swap_in_place(s);
            }
        }
        counts
    }

    /// Simple tangles have exactly `inv(start)` crossings. Checked both by
    /// total and per pair; the two must agree.
    pub fn is_simple(&self) -> Result<bool> {
        if !self.final_permutation().is_identity() {
            return Err(Error::DoesNotSolve);
        }
        let by_total = self.crossing_count() == self.start.inversion_number();
        let by_pairs = self.pair_crossings().values().all(|&c| c == 1);
        debug_assert_eq!(by_total, by_pairs, "crossing self-check disagrees");
        Ok(by_total && by_pairs)
    }

    pub fn geometry(&self) -> PathGeometry {
        let n = self.n();
        let steps = self.rows.len();
        let mut columns = ElementMap::filled(n, Vec::with_capacity(steps + 1));
        let mut directions = ElementMap::filled(n, Vec::with_capacity(steps));
        let mut current = self.start.clone();
        for (col, &e) in current.entries().iter().enumerate() {
            columns[e].push(col + 1);
        }
        for row in &self.rows {
            let mut dir = vec![Direction::V; n + 1];
            for &s in row {
                dir[current.at(s)] = Direction::R;
                dir[current.at(s + 1)] = Direction::L;
                current.swap_in_place(s);
            }
            for (col, &e) in current.entries().iter().enumerate() {
                columns[e].push(col + 1);
                directions[e].push(dir[e]);
            }
        }
        PathGeometry {
            columns,
            directions,
        }
    }

    pub fn corner_count(&self) -> CornerCount {
        let geometry = self.geometry();
        let per_path: Vec<usize> = geometry
            .directions
            .values()
            .iter()
            .map(|dirs| path_corners(dirs))
            .collect();
        CornerCount {
            total: per_path.iter().sum(),
            per_path: ElementMap::from_vec(per_path),
        }
    }

    pub fn marking_of(&self) -> TangleMarking {
        let geometry = self.geometry();
        ElementMap::from_vec(
            geometry
                .directions
                .values()
                .iter()
                .map(|d| runs(d))
                .collect(),
        )
    }

    pub fn is_direct(&self) -> bool {
        self.corner_count()
            .per_path
            .values()
            .iter()
            .all(|&c| c <= 2)
    }

    pub fn is_perfect(&self) -> Result<bool> {
        if !self.is_simple()? {
            return Ok(false);
        }
        Ok(self
            .marking_of()
            .values()
            .iter()
            .all(|m| matches!(m.as_str(), "" | "L" | "R" | "LR" | "RL")))
    }
}

/// Corners of a path given its per-row directions; the path is vertical
/// before the first row and after the last.
pub fn path_corners(dirs: &[Direction]) -> usize {
    let mut prev = Direction::V;
    let mut total = 0;
    for &d in dirs.iter().chain(std::iter::once(&Direction::V)) {
        total += prev.turn_cost(d);
        prev = d;
    }
    total
}

fn runs(dirs: &[Direction]) -> String {
    let mut out = String::new();
    let mut prev = Direction::V;
    for &d in dirs {
        if d != prev {
            match d {
                Direction::L => out.push('L'),
                Direction::R => out.push('R'),
                Direction::V => {}
            }
        }
        prev = d;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn single_cross() -> Tangle {
        Tangle::new(p(&[2, 1]), vec![vec![], vec![1], vec![]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(Tangle::new(p(&[1, 2]), vec![vec![], vec![]]).is_ok());
        assert_eq!(
            Tangle::new(p(&[1, 2, 3]), vec![vec![], vec![1, 2], vec![]]),
            Err(Error::OverlappingSwaps { row: 1 })
        );
        assert!(Tangle::new(p(&[2, 1]), vec![vec![], vec![1], vec![]]).is_ok());
        assert_eq!(
            Tangle::new(p(&[2, 1]), vec![vec![1]]),
            Err(Error::NonEmptyBoundaryRow)
        );
        assert_eq!(
            Tangle::new(p(&[2, 1]), vec![vec![], vec![2], vec![]]),
            Err(Error::PositionOutOfRange {
                position: 2,
                max: 1
            })
        );
        assert_eq!(
            Tangle::new(p(&[1, 2, 3, 4, 5]), vec![vec![], vec![4, 1], vec![]]),
            Err(Error::UnsortedRow { row: 1 })
        );
        assert_eq!(Tangle::new(p(&[1]), vec![]), Err(Error::NoRows));
    }

    #[test]
    fn permutation_sequence_examples() {
        let seq = single_cross().permutation_sequence();
        assert_eq!(seq, vec![p(&[2, 1]), p(&[2, 1]), p(&[1, 2]), p(&[1, 2])]);
        let id = Tangle::vertical(p(&[1, 2, 3]));
        assert_eq!(id.permutation_sequence(), vec![p(&[1, 2, 3]); 3]);
        let t = Tangle::new(p(&[3, 1, 2]), vec![vec![], vec![1], vec![2], vec![]]).unwrap();
        assert!(t.final_permutation().is_identity());
    }

    #[test]
    fn solves_examples() {
        assert!(single_cross().solves(&p(&[2, 1])));
        assert!(Tangle::vertical(p(&[1, 2, 3])).solves(&p(&[1, 2, 3])));
        assert!(!single_cross().solves(&p(&[1, 2])));
    }

    #[test]
    fn crossing_and_simplicity() {
        assert_eq!(Tangle::vertical(p(&[1, 2])).crossing_count(), 0);
        assert_eq!(single_cross().crossing_count(), 1);
        assert!(single_cross().is_simple().unwrap());
        let double = Tangle::new(p(&[1, 2]), vec![vec![], vec![1], vec![1], vec![]]).unwrap();
        assert!(!double.is_simple().unwrap());
        let unsolved = Tangle::new(p(&[1, 2]), vec![vec![], vec![1], vec![]]).unwrap();
        assert_eq!(unsolved.is_simple(), Err(Error::DoesNotSolve));
        assert_eq!(unsolved.is_perfect(), Err(Error::DoesNotSolve));
    }

    #[test]
    fn corner_examples() {
        assert_eq!(Tangle::vertical(p(&[1, 2, 3])).corner_count().total, 0);
        let c = single_cross().corner_count();
        assert_eq!(c.per_path.values(), &[2, 2]);
        assert_eq!(c.total, 4);
        let double = Tangle::new(p(&[1, 2]), vec![vec![], vec![1], vec![1], vec![]]).unwrap();
        let g = double.geometry();
        assert_eq!(
            g.directions[1],
            vec![Direction::V, Direction::R, Direction::L, Direction::V]
        );
        assert_eq!(double.corner_count().per_path[1], 4);
    }

    #[test]
    fn geometry_moves_one_column_per_swap() {
        let t = Tangle::new(p(&[3, 1, 2]), vec![vec![], vec![1], vec![2], vec![]]).unwrap();
        let g = t.geometry();
        assert_eq!(g.columns[3], vec![1, 1, 2, 3, 3]);
        assert_eq!(g.columns[2], vec![3, 3, 3, 2, 2]);
        for e in 1..=3 {
            for (w, d) in g.columns[e].windows(2).zip(&g.directions[e]) {
                let delta = w[1] as i64 - w[0] as i64;
                let expected = match d {
                    Direction::V => 0,
                    Direction::R => 1,
                    Direction::L => -1,
                };
                assert_eq!(delta, expected);
            }
        }
    }

    #[test]
    fn marking_examples() {
        let m = Tangle::vertical(p(&[1, 2])).marking_of();
        assert_eq!(m[1], "");
        let m = single_cross().marking_of();
        assert_eq!(m[2], "R");
        assert_eq!(m[1], "L");
        // two right moves separated by a vertical row are two segments
        let t = Tangle::new(
            p(&[2, 3, 1]),
            vec![vec![], vec![1], vec![], vec![2], vec![]],
        );
        assert_eq!(t.unwrap().marking_of()[2], "RR");
        let bounce = Tangle::new(
            p(&[1, 2, 3]),
            vec![vec![], vec![1], vec![], vec![1], vec![]],
        )
        .unwrap();
        assert_eq!(bounce.marking_of()[1], "RL");
        assert_eq!(bounce.marking_of()[2], "LR");
    }

    #[test]
    fn direct_and_perfect_predicates() {
        assert!(Tangle::vertical(p(&[1, 2, 3])).is_direct());
        assert!(single_cross().is_direct());
        assert!(single_cross().is_perfect().unwrap());
        let bounce = Tangle::new(
            p(&[1, 2, 3]),
            vec![vec![], vec![1], vec![], vec![1], vec![]],
        )
        .unwrap();
        assert!(!bounce.is_direct());
        // element 2 goes R, L, R: outside the perfect alphabet
        let zigzag = Tangle::new(
            p(&[2, 1, 3]),
            vec![vec![], vec![1], vec![1], vec![1], vec![]],
        )
        .unwrap();
        assert_eq!(zigzag.marking_of()[2], "RLR");
        assert!(!zigzag.is_perfect().unwrap());
    }

    #[test]
    fn corners_are_twice_the_runs() {
        let t = Tangle::new(
            p(&[2, 1, 3]),
            vec![vec![], vec![1], vec![1], vec![], vec![1], vec![2], vec![]],
        )
        .unwrap();
        let c = t.corner_count();
        let m = t.marking_of();
        for e in 1..=3 {
            assert_eq!(c.per_path[e], 2 * m[e].len(), "element {e}");
        }
    }
}
