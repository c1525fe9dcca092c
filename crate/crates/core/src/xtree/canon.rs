//! AHU-style canonical codes rooted at the start vertex.
//!
//! A vertex encodes as `OPEN | OPEN_END`, then one `edge token, child code`
//! entry per child in lexicographic order, then `CLOSE`. Codes are
//! self-delimiting, so lexicographic comparison of entries is a total order
//! that depends only on the isomorphism type.

use super::{Dir, Edge, RawXTree};
use crate::words::Sym;

pub type CanonicalCode = Vec<u32>;

pub(crate) const CLOSE: u32 = 0;
pub(crate) const OPEN: u32 = 1;
pub(crate) const OPEN_END: u32 = 2;

pub(crate) fn edge_token(label: Sym, dir: Dir) -> u32 {
    3 + 2 * label.0 + u32::from(dir == Dir::In)
}

pub(crate) fn token_parts(token: u32) -> (Sym, Dir) {
    let t = token - 3;
    (Sym(t / 2), if t % 2 == 0 { Dir::Out } else { Dir::In })
}

/// Per vertex: children as (edge token, child), sorted canonically, plus codes.
struct Rooted {
    children: Vec<Vec<(u32, usize)>>,
    codes: Vec<CanonicalCode>,
}

fn rooted(t: &RawXTree) -> Rooted {
    let adj = t.adjacency();
    let n = t.vertex_count();
    let mut children = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let mut stack = vec![t.start()];
    visited[t.start()] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &(w, label, dir) in &adj[v] {
            if !visited[w] {
                visited[w] = true;
                children[v].push((edge_token(label, dir), w));
                stack.push(w);
            }
        }
    }
    let mut codes: Vec<CanonicalCode> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut kids = std::mem::take(&mut children[v]);
        kids.sort_by(|a, b| (a.0, &codes[a.1]).cmp(&(b.0, &codes[b.1])));
        let mut code = vec![if v == t.end() { OPEN_END } else { OPEN }];
        for &(token, w) in &kids {
            code.push(token);
            code.extend_from_slice(&codes[w]);
        }
        code.push(CLOSE);
        codes[v] = code;
        children[v] = kids;
    }
    Rooted { children, codes }
}

pub fn canonical_code(t: &RawXTree) -> CanonicalCode {
    rooted(t).codes.swap_remove(t.start())
}

/// Renumbers vertices in canonical preorder; the start becomes vertex 0.
pub(crate) fn canonicalize(t: &RawXTree) -> RawXTree {
    let r = rooted(t);
    let n = t.vertex_count();
    let mut edges = Vec::with_capacity(n - 1);
    let mut end = 0;
    let mut next = 0;
    let mut stack = vec![(t.start(), usize::MAX, 0u32)];
    while let Some((v, parent, token)) = stack.pop() {
        let id = next;
        next += 1;
        if v == t.end() {
            end = id;
        }
        if parent != usize::MAX {
            let (label, dir) = token_parts(token);
            edges.push(match dir {
                Dir::Out => Edge { from: parent, label, to: id },
                Dir::In => Edge { from: id, label, to: parent },
            });
        }
        for &(tok, w) in r.children[v].iter().rev() {
            stack.push((w, id, tok));
        }
    }
    RawXTree::from_parts(n, edges, 0, end)
}

/// Rebuilds a tree from a canonical code.
pub(crate) fn decode(code: &[u32]) -> RawXTree {
    let mut edges = Vec::new();
    let mut end = 0;
    let mut next = 0;
    // Stack of open vertices; a pending token attaches the next OPEN.
    let mut open: Vec<usize> = Vec::new();
    let mut pending: Option<u32> = None;
    for &tok in code {
        match tok {
            OPEN | OPEN_END => {
                let id = next;
                next += 1;
                if tok == OPEN_END {
                    end = id;
                }
                if let (Some(token), Some(&parent)) = (pending.take(), open.last()) {
                    let (label, dir) = token_parts(token);
                    edges.push(match dir {
                        Dir::Out => Edge { from: parent, label, to: id },
                        Dir::In => Edge { from: id, label, to: parent },
                    });
                }
                open.push(id);
            }
            CLOSE => {
                open.pop();
            }
            token => pending = Some(token),
        }
    }
    RawXTree::from_parts(next, edges, 0, end)
}
