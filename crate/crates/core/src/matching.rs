//! Maximum vertex-weighted matching for 0/1 vertex weights on general graphs.
//!
//! With binary weights the problem is to cover as many weight-1 vertices as
//! possible. Sets of vertices coverable by some matching form a matroid, so
//! the weight-1 vertices are added greedily in increasing order, each one kept
//! if the enlarged set is still coverable. Coverability of a set `S` is a
//! perfect-matching test: join all vertices outside `S` into a clique (plus
//! one pad vertex for parity) and run Edmonds' blossom algorithm.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde_json::json;

use crate::marking::Rec;

/// An edge oriented from a left candidate to a right candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchEdge {
    pub left: usize,
    pub right: usize,
    /// Minimal rec the edge was generated from, if any.
    pub rec: Option<Rec>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchGraph {
    weights: BTreeMap<usize, u8>,
    edges: Vec<MatchEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<MatchEdge>,
    pub weight: usize,
}

impl MatchGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex; weights other than 0 and 1 are rejected.
    pub fn add_vertex(&mut self, v: usize, weight: u8) {
        assert!(weight <= 1, "vertex weights must be 0 or 1");
        self.weights.insert(v, weight);
    }

    /// Adds an edge unless it is a loop or its unordered pair is already
    /// present; the first orientation seen is kept. Endpoints must exist.
    pub fn add_edge(&mut self, left: usize, right: usize, rec: Option<Rec>) -> bool {
        assert!(
            self.weights.contains_key(&left) && self.weights.contains_key(&right),
            "edge endpoints must be vertices"
        );
        if left == right || self.edge_between(left, right).is_some() {
            return false;
        }
        self.edges.push(MatchEdge { left, right, rec });
        true
    }

    pub fn vertices(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.weights.iter().map(|(&v, &w)| (v, w))
    }

    pub fn weight(&self, v: usize) -> u8 {
        self.weights[&v]
    }

    pub fn edges(&self) -> &[MatchEdge] {
        &self.edges
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<&MatchEdge> {
        self.edges
            .iter()
            .find(|e| (e.left == u && e.right == v) || (e.left == v && e.right == u))
    }

    /// `{"vertices":[{"id":..,"w":..}],"edges":[[left,right]]}`
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "vertices": self.vertices().map(|(v, w)| json!({"id": v, "w": w})).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!([e.left, e.right])).collect::<Vec<_>>(),
        })
    }
}

/// A matching maximising the total weight of matched vertices. Edges with no
/// weight-1 endpoint are left out, and the result is a function of the
/// vertex and edge insertion order.
pub fn max_vertex_weight_matching(g: &MatchGraph) -> Matching {
    let ids: Vec<usize> = g.weights.keys().copied().collect();
    let index: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize)> = g
        .edges
        .iter()
        .map(|e| (index[&e.left], index[&e.right]))
        .collect();

    let mut covered = BTreeSet::new();
    let mut mates = cover(ids.len(), &edges, &covered).expect("empty set is coverable");
    for (i, &v) in ids.iter().enumerate() {
        if g.weights[&v] == 1 {
            covered.insert(i);
            match cover(ids.len(), &edges, &covered) {
                Some(m) => mates = m,
                None => {
                    covered.remove(&i);
                }
            }
        }
    }

    let mut chosen = Vec::new();
    for e in &g.edges {
        let (u, v) = (index[&e.left], index[&e.right]);
        if mates[u] == Some(v) && (covered.contains(&u) || covered.contains(&v)) {
            chosen.push(*e);
        }
    }
    let weight = chosen
        .iter()
        .map(|e| (g.weights[&e.left] + g.weights[&e.right]) as usize)
        .sum();
    debug_assert_eq!(weight, covered.len());
    Matching {
        edges: chosen,
        weight,
    }
}

/// A matching of the graph covering `required`, as mates of the first `n`
/// vertices, or `None` if no matching covers it.
fn cover(
    n: usize,
    edges: &[(usize, usize)],
    required: &BTreeSet<usize>,
) -> Option<Vec<Option<usize>>> {
    let optional: Vec<usize> = (0..n).filter(|v| !required.contains(v)).collect();
    let total = n + n % 2;
    let mut adj = vec![BTreeSet::new(); total];
    for &(u, v) in edges {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    for (i, &u) in optional.iter().enumerate() {
        for &v in &optional[i + 1..] {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        if total > n {
            adj[u].insert(n);
            adj[n].insert(u);
        }
    }
    let adj: Vec<Vec<usize>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
    let mates = max_cardinality_matching(&adj);
    if mates.iter().all(Option::is_some) {
        Some(
            mates[..n]
                .iter()
                .enumerate()
                .map(|(u, &m)| {
                    m.filter(|&v| v < n && edges.iter().any(|&e| e == (u, v) || e == (v, u)))
                })
                .collect(),
        )
    } else {
        None
    }
}

/// Edmonds' blossom algorithm for maximum cardinality matching.
pub(crate) fn max_cardinality_matching(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut state = Blossom::new(adj);
    for root in 0..adj.len() {
        if state.mate[root].is_none() {
            if let Some(end) = state.find_augmenting_path(root) {
                state.augment(end);
            }
        }
    }
    state.mate
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![None; n],
            parent: vec![None; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lowest_common_ancestor(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                None => break,
                Some(m) => a = self.parent[m].expect("outer vertex has a parent"),
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = self.mate[b].expect("path reaches the root");
            b = self.parent[m].expect("outer vertex has a parent");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("blossom path is matched");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("blossom path has parents");
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.in_tree.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.in_tree[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let closes_blossom =
                    to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if closes_blossom {
                    let current_base = self.lowest_common_ancestor(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, current_base, to);
                    self.mark_path(to, current_base, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = current_base;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.in_tree[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        loop {
            let pv = self.parent[v].expect("augmenting path has parents");
            let next = self.mate[pv];
            self.mate[v] = Some(pv);
            self.mate[pv] = Some(v);
            match next {
                Some(u) => v = u,
                None => break,
            }
        }
    }
}
