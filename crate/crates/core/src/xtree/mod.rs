//! Bi-pointed edge-labelled trees. Pruned trees in canonical form are the
//! elements of the free Ehresmann monoid FAd(X); those whose vertices are all
//! reachable from the start by directed paths form FLAd(X).

mod canon;
mod enumerate;
mod io;
mod prune;

use std::collections::{BTreeSet, VecDeque};

use serde_json::Value;

pub use canon::{canonical_code, CanonicalCode};
pub use enumerate::{enumerate_trees, enumerate_trees_by_depth, random_raw_tree, TreeClass};
pub use io::{raw_from_json, to_dot, to_json, to_term};
pub use prune::{is_pruned, prune, prune_shuffled};

use crate::error::Error;
use crate::psdp::BaseMonoid;
use crate::words::{Alphabet, Sym, Word};

/// Orientation of an edge as seen from one of its endpoints.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Dir {
    Out,
    In,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    pub from: usize,
    pub label: Sym,
    pub to: usize,
}

/// A bi-pointed tree with a directed start→end path, not necessarily pruned.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RawXTree {
    vertex_count: usize,
    edges: Vec<Edge>,
    start: usize,
    end: usize,
}

/// Neighbour of a vertex: (other endpoint, label, orientation from this side).
pub(crate) type Adjacency = Vec<Vec<(usize, Sym, Dir)>>;

impl RawXTree {
    pub fn new(vertex_count: usize, edges: Vec<Edge>, start: usize, end: usize) -> Result<RawXTree, Error> {
        let t = RawXTree { vertex_count, edges, start, end };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_parts(vertex_count: usize, edges: Vec<Edge>, start: usize, end: usize) -> RawXTree {
        let t = RawXTree { vertex_count, edges, start, end };
        debug_assert!(t.validate().is_ok());
        t
    }

    fn validate(&self) -> Result<(), Error> {
        let invalid = |m: &str| Err(Error::InvalidElement(m.to_string()));
        let n = self.vertex_count;
        if n == 0 || self.start >= n || self.end >= n {
            return invalid("start and end must be vertices");
        }
        if self.edges.len() + 1 != n {
            return invalid("a tree on n vertices has n - 1 edges");
        }
        if self.edges.iter().any(|e| e.from >= n || e.to >= n) {
            return invalid("edge endpoint out of range");
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.start]);
        seen[self.start] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, _, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return invalid("underlying graph is not connected");
        }
        if self.trunk_path().is_none() {
            return invalid("no directed path from start to end");
        }
        Ok(())
    }

    pub fn identity() -> RawXTree {
        RawXTree { vertex_count: 1, edges: Vec::new(), start: 0, end: 0 }
    }

    pub fn from_word(w: &Word) -> RawXTree {
        let edges = w.0.iter().enumerate().map(|(i, &label)| Edge { from: i, label, to: i + 1 }).collect();
        RawXTree { vertex_count: w.len() + 1, edges, start: 0, end: w.len() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub(crate) fn adjacency(&self) -> Adjacency {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.from].push((e.to, e.label, Dir::Out));
            adj[e.to].push((e.from, e.label, Dir::In));
        }
        adj
    }

    /// Vertices of the directed start→end path, in order.
    pub(crate) fn trunk_path(&self) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let mut parent = vec![usize::MAX; self.vertex_count];
        let mut stack = vec![self.start];
        parent[self.start] = self.start;
        while let Some(v) = stack.pop() {
            for &(w, _, dir) in &adj[v] {
                if dir == Dir::Out && parent[w] == usize::MAX {
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        if parent[self.end] == usize::MAX {
            return None;
        }
        let mut path = vec![self.end];
        while *path.last().unwrap() != self.start {
            path.push(parent[*path.last().unwrap()]);
        }
        path.reverse();
        Some(path)
    }

    /// Glues the end of `self` to the start of `other`.
    pub fn product(&self, other: &RawXTree) -> RawXTree {
        let n = self.vertex_count;
        let shift = |v: usize| match v {
            v if v == other.start => self.end,
            v if v < other.start => v + n,
            v => v + n - 1,
        };
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge { from: shift(e.from), label: e.label, to: shift(e.to) }));
        RawXTree { vertex_count: n + other.vertex_count - 1, edges, start: self.start, end: shift(other.end) }
    }

    pub fn plus(&self) -> RawXTree {
        RawXTree { end: self.start, ..self.clone() }
    }

    pub fn star(&self) -> RawXTree {
        RawXTree { start: self.end, ..self.clone() }
    }
}

/// A pruned tree in canonical form: vertices are numbered in canonical
/// preorder from the start, so structural equality is isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct XTree(RawXTree);

impl XTree {
    pub fn identity() -> XTree {
        XTree(RawXTree::identity())
    }

    pub fn generator(sym: Sym) -> XTree {
        XTree::from_word(&Word(vec![sym]))
    }

    /// Path trees are pruned already.
    pub fn from_word(w: &Word) -> XTree {
        XTree(canon::canonicalize(&RawXTree::from_word(w)))
    }

    pub fn raw(&self) -> &RawXTree {
        &self.0
    }

    pub fn multiply(&self, other: &XTree) -> XTree {
        if self.is_identity() {
            return other.clone();
        }
        if other.is_identity() {
            return self.clone();
        }
        prune(&self.0.product(&other.0))
    }

    pub fn plus(&self) -> XTree {
        if self.is_idempotent() {
            return self.clone();
        }
        prune(&self.0.plus())
    }

    pub fn star(&self) -> XTree {
        if self.is_idempotent() {
            return self.clone();
        }
        prune(&self.0.star())
    }

    pub fn is_identity(&self) -> bool {
        self.0.vertex_count == 1
    }

    pub fn is_idempotent(&self) -> bool {
        self.0.start == self.0.end
    }

    /// Every vertex is reachable from the start along a directed path.
    pub fn is_left_ehresmann(&self) -> bool {
        // Canonical numbering puts each parent before its children.
        self.0.edges.iter().all(|e| e.from < e.to)
    }

    pub fn edge_count(&self) -> usize {
        self.0.edges.len()
    }

    pub fn label_set(&self) -> BTreeSet<Sym> {
        self.0.edges.iter().map(|e| e.label).collect()
    }

    pub fn trunk(&self) -> Word {
        let path = self.0.trunk_path().expect("valid tree");
        let adj = self.0.adjacency();
        Word(
            path.windows(2)
                .map(|w| adj[w[0]].iter().find(|&&(v, _, d)| v == w[1] && d == Dir::Out).unwrap().1)
                .collect(),
        )
    }

    /// Longest undirected path from the start.
    pub fn depth_undirected(&self) -> usize {
        self.depths(|_| true)
    }

    /// Longest directed path from the start.
    pub fn depth_directed(&self) -> usize {
        self.depths(|d| d == Dir::Out)
    }

    fn depths(&self, follow: impl Fn(Dir) -> bool) -> usize {
        let adj = self.0.adjacency();
        let mut depth = vec![usize::MAX; self.0.vertex_count];
        depth[self.0.start] = 0;
        let mut queue = VecDeque::from([self.0.start]);
        let mut best = 0;
        while let Some(v) = queue.pop_front() {
            best = best.max(depth[v]);
            for &(w, _, d) in &adj[v] {
                if follow(d) && depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        best
    }

    /// Natural order on idempotents: `e ≤ f` iff `ef = e`.
    pub fn leq_nat(&self, f: &XTree) -> Result<bool, Error> {
        if !self.is_idempotent() || !f.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        Ok(self.multiply(f) == *self)
    }

    /// Every idempotent right identity of `t` is one of `self`.
    pub fn leq_ltilde(&self, t: &XTree) -> bool {
        self.multiply(&t.star()) == *self
    }

    /// Every idempotent left identity of `t` is one of `self`.
    pub fn leq_rtilde(&self, t: &XTree) -> bool {
        t.plus().multiply(self) == *self
    }

    pub fn code(&self) -> CanonicalCode {
        canonical_code(&self.0)
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        to_json(&self.0, alphabet)
    }

    pub fn to_term(&self, alphabet: &Alphabet) -> String {
        to_term(&self.0, alphabet)
    }

    /// Trunk vertices from start to end, in canonical numbering.
    pub(crate) fn trunk_vertices(&self) -> Vec<usize> {
        self.0.trunk_path().expect("valid tree")
    }

    /// A copy with the end moved to `end`; the result is not re-pruned.
    pub(crate) fn with_end_raw(&self, end: usize) -> RawXTree {
        RawXTree { end, ..self.0.clone() }
    }

    /// A copy with the start moved to `start`; the result is not re-pruned.
    pub(crate) fn with_start_raw(&self, start: usize) -> RawXTree {
        RawXTree { start, ..self.0.clone() }
    }

    /// The part reachable from `root` along directed edges, bi-pointed at
    /// `root` and `end`. `end` must be reachable.
    pub(crate) fn directed_subtree_raw(&self, root: usize, end: usize) -> RawXTree {
        let adj = self.0.adjacency();
        self.component(&adj, root, end, |_, _, d| d == Dir::Out)
    }

    /// `(E₀, …, E_k)` with `self = E₀ x₁ E₁ ⋯ x_k E_k`, where `x₁⋯x_k` is
    /// the trunk and `E_i` is everything hanging off the i-th trunk vertex.
    pub fn trunk_factors(&self) -> Vec<XTree> {
        let adj = self.0.adjacency();
        let trunk = self.trunk_vertices();
        let on_trunk = |v: usize, w: usize| trunk.windows(2).any(|p| (p[0], p[1]) == (v, w) || (p[0], p[1]) == (w, v));
        trunk.iter().map(|&v| prune(&self.component(&adj, v, v, |x, y, _| !on_trunk(x, y)))).collect()
    }

    /// Vertices reachable from `root` along edges accepted by `follow`,
    /// renumbered from 0 in discovery order.
    fn component(
        &self,
        adj: &Adjacency,
        root: usize,
        end: usize,
        follow: impl Fn(usize, usize, Dir) -> bool,
    ) -> RawXTree {
        let mut index = vec![usize::MAX; self.0.vertex_count];
        index[root] = 0;
        let mut order = vec![root];
        let mut edges = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &(w, label, d) in &adj[v] {
                if index[w] == usize::MAX && follow(v, w, d) {
                    index[w] = order.len();
                    order.push(w);
                    edges.push(match d {
                        Dir::Out => Edge { from: index[v], label, to: index[w] },
                        Dir::In => Edge { from: index[w], label, to: index[v] },
                    });
                }
            }
        }
        RawXTree::from_parts(order.len(), edges, 0, index[end])
    }
}

/// FAd(X) as a model for the generic checkers.
#[derive(Clone, Debug)]
pub struct FreeEhresmann {
    pub alphabet: Alphabet,
}

impl FreeEhresmann {
    pub fn word(&self, text: &str) -> Result<XTree, Error> {
        Ok(XTree::from_word(&self.alphabet.parse_word(text)?))
    }
}

impl BaseMonoid for FreeEhresmann {
    type Elem = XTree;

    fn identity(&self) -> XTree {
        XTree::identity()
    }

    fn multiply(&self, a: &XTree, b: &XTree) -> XTree {
        a.multiply(b)
    }

    fn invert(&self, a: &XTree) -> Option<XTree> {
        a.is_identity().then(XTree::identity)
    }

    fn elem_to_json(&self, a: &XTree) -> Value {
        a.to_json(&self.alphabet)
    }
}

#[cfg(test)]
mod tests;
