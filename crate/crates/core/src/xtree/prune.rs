//! Pruning: repeatedly delete a branch that maps homomorphically into the
//! rest of the tree while fixing its attachment vertex.
//!
//! If a tree has a non-identity retraction r, pick an edge (p, c) with p in
//! the image and c outside it; the branch below c then maps into the rest via
//! r. So a tree with no foldable branch is pruned, and the loop below reaches
//! the pruned retract.

use rand::seq::SliceRandom;
use rand::Rng;

use super::canon::canonicalize;
use super::{Adjacency, Dir, Edge, RawXTree, XTree};

struct Work {
    adj: Adjacency,
    alive: Vec<bool>,
    start: usize,
    end: usize,
}

/// Rooted view of the live part: parent edge per vertex and preorder.
struct Rooting {
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    preorder: Vec<usize>,
}

impl Work {
    fn new(t: &RawXTree) -> Work {
        Work { adj: t.adjacency(), alive: vec![true; t.vertex_count()], start: t.start(), end: t.end() }
    }

    fn root(&self) -> Rooting {
        let n = self.adj.len();
        let mut r = Rooting {
            parent: vec![usize::MAX; n],
            children: vec![Vec::new(); n],
            depth: vec![0; n],
            preorder: Vec::new(),
        };
        let mut stack = vec![self.start];
        r.parent[self.start] = self.start;
        while let Some(v) = stack.pop() {
            r.preorder.push(v);
            for &(w, _, _) in &self.adj[v] {
                if self.alive[w] && r.parent[w] == usize::MAX {
                    r.parent[w] = v;
                    r.depth[w] = r.depth[v] + 1;
                    r.children[v].push(w);
                    stack.push(w);
                }
            }
        }
        r
    }

    /// Branch candidates: live non-root vertices off the trunk, each standing
    /// for the branch hanging from its parent edge.
    fn candidates(&self, r: &Rooting) -> Vec<usize> {
        let mut on_trunk = vec![false; self.adj.len()];
        let mut v = self.end;
        on_trunk[v] = true;
        while v != self.start {
            v = r.parent[v];
            on_trunk[v] = true;
        }
        r.preorder.iter().copied().filter(|&c| !on_trunk[c]).collect()
    }

    fn subtree(&self, r: &Rooting, c: usize) -> Vec<usize> {
        let mut out = vec![c];
        let mut i = 0;
        while i < out.len() {
            let v = out[i];
            out.extend(r.children[v].iter().copied().filter(|&w| self.alive[w]));
            i += 1;
        }
        out
    }

    /// Whether the branch at `c` maps into the rest, fixing `parent(c)`.
    fn foldable(&self, r: &Rooting, c: usize) -> bool {
        let p = r.parent[c];
        let branch = self.subtree(r, c);
        let n = self.adj.len();
        let mut in_branch = vec![false; n];
        for &v in &branch {
            in_branch[v] = true;
        }
        let (label, dir) = self.edge_between(p, c);
        let mut memo = vec![0u8; n * n];
        self.adj[p].iter().any(|&(w, l, d)| {
            self.alive[w] && !in_branch[w] && l == label && d == dir && self.simulates(r, &in_branch, &mut memo, c, w)
        })
    }

    fn edge_between(&self, u: usize, v: usize) -> (crate::words::Sym, Dir) {
        let &(_, l, d) = self.adj[u].iter().find(|&&(w, _, _)| w == v).expect("adjacent");
        (l, d)
    }

    /// The subtree below `u` maps into the rest with `u` sent to `w`.
    fn simulates(&self, r: &Rooting, in_branch: &[bool], memo: &mut [u8], u: usize, w: usize) -> bool {
        let key = u * self.adj.len() + w;
        if memo[key] != 0 {
            return memo[key] == 2;
        }
        let ok = r.children[u].iter().filter(|&&u2| self.alive[u2]).all(|&u2| {
            let (label, dir) = self.edge_between(u, u2);
            self.adj[w].iter().any(|&(w2, l, d)| {
                self.alive[w2] && !in_branch[w2] && l == label && d == dir && self.simulates(r, in_branch, memo, u2, w2)
            })
        });
        memo[key] = if ok { 2 } else { 1 };
        ok
    }

    fn kill(&mut self, r: &Rooting, c: usize) {
        for v in self.subtree(r, c) {
            self.alive[v] = false;
        }
    }

    /// Removes branches until none folds; `order` arranges each pass.
    fn run(&mut self, mut order: impl FnMut(&Rooting, &mut Vec<usize>)) {
        loop {
            let r = self.root();
            let mut cands = self.candidates(&r);
            order(&r, &mut cands);
            let mut removed = false;
            for c in cands {
                // Earlier removals in this pass may have taken c with them.
                if self.alive[c] && self.alive_path(&r, c) && self.foldable(&r, c) {
                    self.kill(&r, c);
                    removed = true;
                }
            }
            if !removed {
                return;
            }
        }
    }

    fn alive_path(&self, r: &Rooting, mut v: usize) -> bool {
        while v != self.start {
            if !self.alive[v] {
                return false;
            }
            v = r.parent[v];
        }
        true
    }

    fn into_raw(self) -> RawXTree {
        let n = self.adj.len();
        let mut index = vec![usize::MAX; n];
        let mut count = 0;
        for v in 0..n {
            if self.alive[v] {
                index[v] = count;
                count += 1;
            }
        }
        let mut edges = Vec::with_capacity(count.saturating_sub(1));
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &(v, label, dir) in nbrs {
                if dir == Dir::Out && self.alive[u] && self.alive[v] {
                    edges.push(Edge { from: index[u], label, to: index[v] });
                }
            }
        }
        RawXTree::from_parts(count, edges, index[self.start], index[self.end])
    }
}

/// Prunes with deepest branches tried first.
pub fn prune(t: &RawXTree) -> XTree {
    let mut work = Work::new(t);
    work.run(|r, cands| cands.sort_by_key(|&c| std::cmp::Reverse(r.depth[c])));
    XTree(canonicalize(&work.into_raw()))
}

/// Prunes with branch candidates tried in a random order on every pass.
pub fn prune_shuffled<R: Rng>(t: &RawXTree, rng: &mut R) -> XTree {
    let mut work = Work::new(t);
    work.run(|_, cands| cands.shuffle(rng));
    XTree(canonicalize(&work.into_raw()))
}

pub fn is_pruned(t: &RawXTree) -> bool {
    let work = Work::new(t);
    let r = work.root();
    !work.candidates(&r).into_iter().any(|c| work.foldable(&r, c))
}
