//! Exhaustive generation of pruned trees and random raw trees.
//!
//! Trees are generated directly as canonical codes: sibling subtrees are
//! distinct and sorted, so every isomorphism type appears once. Two necessary
//! conditions for prunedness cut the search: no branch off the trunk may
//! simulate into a sibling with the same edge token. Survivors are then
//! checked with the full pruning test.

use std::cmp::Ordering;
use std::rc::Rc;

use rand::Rng;

use super::canon::{decode, edge_token, CLOSE, OPEN, OPEN_END};
use super::prune::is_pruned;
use super::{Dir, Edge, RawXTree, XTree};
use crate::error::Error;
use crate::words::Sym;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TreeClass {
    /// All of FAd(X).
    Ehresmann,
    /// FLAd(X): every edge points away from the start.
    LeftEhresmann,
}

struct Shape {
    code: Vec<u32>,
    edges: usize,
    children: Vec<Item>,
}

#[derive(Clone)]
struct Item {
    token: u32,
    child: Rc<Shape>,
}

impl Item {
    fn size(&self) -> usize {
        1 + self.child.edges
    }

    fn key_cmp(&self, other: &Item) -> Ordering {
        (self.token, &self.child.code).cmp(&(other.token, &other.child.code))
    }
}

/// Rooted homomorphism from `a` into `b`, ignoring end markers.
fn simulates(a: &Shape, b: &Shape) -> bool {
    a.children.iter().all(|x| b.children.iter().any(|y| x.token == y.token && simulates(&x.child, &y.child)))
}

fn shape(end: bool, mut children: Vec<Item>) -> Shape {
    children.sort_by(Item::key_cmp);
    let mut code = vec![if end { OPEN_END } else { OPEN }];
    let mut edges = 0;
    for item in &children {
        code.push(item.token);
        code.extend_from_slice(&item.child.code);
        edges += item.size();
    }
    code.push(CLOSE);
    Shape { code, edges, children }
}

struct Generator {
    tokens: Vec<u32>,
    out_tokens: Vec<u32>,
    budget: usize,
    produced: usize,
}

impl Generator {
    fn new(labels: &[Sym], class: TreeClass, budget: usize) -> Generator {
        let mut labels = labels.to_vec();
        labels.sort();
        labels.dedup();
        let out_tokens: Vec<u32> = labels.iter().map(|&l| edge_token(l, Dir::Out)).collect();
        let mut tokens = out_tokens.clone();
        if class == TreeClass::Ehresmann {
            tokens.extend(labels.iter().map(|&l| edge_token(l, Dir::In)));
        }
        tokens.sort();
        Generator { tokens, out_tokens, budget, produced: 0 }
    }

    fn charge(&mut self) -> Result<(), Error> {
        self.produced += 1;
        if self.produced > self.budget {
            return Err(Error::Budget { budget: self.budget });
        }
        Ok(())
    }

    fn items(&self, shapes: &[Rc<Shape>]) -> Vec<Item> {
        let mut items: Vec<Item> = self
            .tokens
            .iter()
            .flat_map(|&token| shapes.iter().map(move |s| Item { token, child: s.clone() }))
            .collect();
        items.sort_by(Item::key_cmp);
        items
    }

    /// Sibling sets drawn from `items` (pairwise non-simulating), optionally
    /// next to a marked sibling no member may simulate into. `target` fixes
    /// the total edge count; `None` emits every admissible set.
    fn forests(
        &mut self,
        items: &[Item],
        target: Option<usize>,
        marked: Option<&Item>,
        emit: &mut dyn FnMut(Vec<Item>),
    ) -> Result<(), Error> {
        let mut chosen = Vec::new();
        self.forests_from(items, 0, target, marked, &mut chosen, emit)
    }

    fn forests_from(
        &mut self,
        items: &[Item],
        from: usize,
        remaining: Option<usize>,
        marked: Option<&Item>,
        chosen: &mut Vec<Item>,
        emit: &mut dyn FnMut(Vec<Item>),
    ) -> Result<(), Error> {
        match remaining {
            Some(0) => {
                self.charge()?;
                emit(chosen.clone());
                return Ok(());
            }
            None => {
                self.charge()?;
                emit(chosen.clone());
            }
            Some(_) => {}
        }
        for i in from..items.len() {
            let x = &items[i];
            if remaining.is_some_and(|r| x.size() > r) {
                continue;
            }
            let clash = chosen
                .iter()
                .any(|y| x.token == y.token && (simulates(&x.child, &y.child) || simulates(&y.child, &x.child)))
                || marked.is_some_and(|m| m.token == x.token && simulates(&x.child, &m.child));
            if clash {
                continue;
            }
            chosen.push(x.clone());
            self.forests_from(items, i + 1, remaining.map(|r| r - x.size()), marked, chosen, emit)?;
            chosen.pop();
        }
        Ok(())
    }

    /// Marked roots from unmarked items and marked candidates.
    fn marked_roots(
        &mut self,
        items: &[Item],
        marked_items: &[Item],
        target: Option<usize>,
        out: &mut Vec<Rc<Shape>>,
    ) -> Result<(), Error> {
        self.forests(items, target, None, &mut |f| out.push(Rc::new(shape(true, f))))?;
        for m in marked_items {
            let rest = match target {
                Some(t) if m.size() > t => continue,
                Some(t) => Some(t - m.size()),
                None => None,
            };
            self.forests(items, rest, Some(m), &mut |mut f| {
                f.push(m.clone());
                out.push(Rc::new(shape(false, f)));
            })?;
        }
        Ok(())
    }

    fn marked_items(&self, shapes: &[Rc<Shape>]) -> Vec<Item> {
        self.out_tokens.iter().flat_map(|&token| shapes.iter().map(move |s| Item { token, child: s.clone() })).collect()
    }
}

fn finish(shapes: Vec<Rc<Shape>>) -> Vec<XTree> {
    shapes
        .into_iter()
        .filter_map(|s| {
            let raw = decode(&s.code);
            is_pruned(&raw).then_some(XTree(raw))
        })
        .collect()
}

/// Every pruned tree over `labels` with at most `max_edges` edges, once each.
pub fn enumerate_trees(labels: &[Sym], max_edges: usize, class: TreeClass, budget: usize) -> Result<Vec<XTree>, Error> {
    let mut g = Generator::new(labels, class, budget);
    let mut unmarked: Vec<Vec<Rc<Shape>>> = Vec::new();
    let mut marked: Vec<Vec<Rc<Shape>>> = Vec::new();
    for k in 0..=max_edges {
        let smaller: Vec<Rc<Shape>> = unmarked.iter().flatten().cloned().collect();
        let items = g.items(&smaller);
        let mut level = Vec::new();
        g.forests(&items, Some(k), None, &mut |f| level.push(Rc::new(shape(false, f))))?;
        let marked_smaller: Vec<Rc<Shape>> = marked.iter().flatten().cloned().collect();
        let marked_items = g.marked_items(&marked_smaller);
        let mut marked_level = Vec::new();
        g.marked_roots(&items, &marked_items, Some(k), &mut marked_level)?;
        unmarked.push(level);
        marked.push(marked_level);
    }
    Ok(finish(marked.into_iter().flatten().collect()))
}

/// Every pruned left-Ehresmann tree over `labels` whose directed depth is at
/// most `max_depth`, once each.
pub fn enumerate_trees_by_depth(labels: &[Sym], max_depth: usize, budget: usize) -> Result<Vec<XTree>, Error> {
    let mut g = Generator::new(labels, TreeClass::LeftEhresmann, budget);
    let leaf = Rc::new(shape(false, Vec::new()));
    let mut unmarked = vec![leaf];
    let mut marked = vec![Rc::new(shape(true, Vec::new()))];
    for _ in 0..max_depth {
        let items = g.items(&unmarked);
        let mut next = Vec::new();
        g.forests(&items, None, None, &mut |f| next.push(Rc::new(shape(false, f))))?;
        let marked_items = g.marked_items(&marked);
        let mut next_marked = Vec::new();
        g.marked_roots(&items, &marked_items, None, &mut next_marked)?;
        unmarked = next;
        marked = next_marked;
    }
    Ok(finish(marked))
}

/// A random raw tree with at most `max_edges` edges, built by attaching
/// vertices one at a time; the end is a random vertex on a directed path
/// from the start.
pub fn random_raw_tree<R: Rng>(rng: &mut R, labels: &[Sym], max_edges: usize, class: TreeClass) -> RawXTree {
    let n = rng.gen_range(0..=max_edges);
    let mut edges = Vec::with_capacity(n);
    let mut reachable = vec![true];
    for v in 1..=n {
        let parent = rng.gen_range(0..v);
        let label = labels[rng.gen_range(0..labels.len())];
        let out = class == TreeClass::LeftEhresmann || rng.gen_bool(0.5);
        edges.push(if out { Edge { from: parent, label, to: v } } else { Edge { from: v, label, to: parent } });
        reachable.push(out && reachable[parent]);
    }
    let ends: Vec<usize> = (0..=n).filter(|&v| reachable[v]).collect();
    let end = ends[rng.gen_range(0..ends.len())];
    RawXTree::from_parts(n + 1, edges, 0, end)
}
