//! Known forbidden configurations, ready to feed to the checkers.

use super::{check_forbidden_config, ConfigReport, EhresmannContext};
use crate::expansions::{MMElement, MargolisMeakin};
use crate::psdp::{FreeGroup, Integers, PSetElement, Sdp};
use crate::words::{Alphabet, GroupWord, Sym, Word};
use crate::xtree::{enumerate_trees, FreeEhresmann, TreeClass, XTree};

/// Elements `a`, `b` and projections `e_1, …, e_n` of a context.
#[derive(Clone, Debug)]
pub struct ForbiddenInstance<C: EhresmannContext> {
    pub ctx: C,
    pub a: C::Elem,
    pub b: C::Elem,
    pub e: Vec<C::Elem>,
    /// Elements over which sampled conditions are checked.
    pub samples: Vec<C::Elem>,
}

impl<C: EhresmannContext> ForbiddenInstance<C> {
    pub fn check(&self, depth: usize) -> ConfigReport {
        check_forbidden_config(&self.ctx, &self.a, &self.b, &self.e, depth, &self.samples)
    }

    /// `b·aⁱ`.
    pub fn ba(&self, i: usize) -> C::Elem {
        self.ctx.multiply(&self.b, &self.ctx.power(&self.a, i))
    }
}

fn gpow(sym: Sym, k: i64) -> GroupWord {
    GroupWord::generator(sym).power(k)
}

/// S(F_x) with `a = ({1, x²}, x²)`, `b = ({x}, 1)`, `e_i = ({x^{2i}}, 1)`.
pub fn sdp_single_generator(n: usize) -> ForbiddenInstance<Sdp<FreeGroup>> {
    let x = Sym(0);
    let ctx = Sdp::new(FreeGroup { alphabet: Alphabet::new(&["x"]).expect("valid name") });
    let one = GroupWord::identity();
    ForbiddenInstance {
        a: PSetElement::new([one.clone(), gpow(x, 2)], gpow(x, 2)),
        b: PSetElement::new([gpow(x, 1)], one.clone()),
        e: (1..=n as i64).map(|i| PSetElement::new([gpow(x, 2 * i)], one.clone())).collect(),
        samples: Vec::new(),
        ctx,
    }
}

/// S(F_{g,h}) with `a = ({1, g}, g)`, `b = ({1, h}, h)` and
/// `e_i = ({1, h, hg, …, hgⁱ}, 1)`.
pub fn sdp_two_generators(n: usize) -> ForbiddenInstance<Sdp<FreeGroup>> {
    let (g, h) = (Sym(0), Sym(1));
    let ctx = Sdp::new(FreeGroup { alphabet: Alphabet::new(&["g", "h"]).expect("valid names") });
    let one = GroupWord::identity();
    let hg = |k: i64| gpow(h, 1).multiply(&gpow(g, k));
    ForbiddenInstance {
        a: PSetElement::new([one.clone(), gpow(g, 1)], gpow(g, 1)),
        b: PSetElement::new([one.clone(), gpow(h, 1)], gpow(h, 1)),
        e: (1..=n as i64)
            .map(|i| PSetElement::new([one.clone()].into_iter().chain((0..=i).map(hg)), one.clone()))
            .collect(),
        samples: Vec::new(),
        ctx,
    }
}

/// M(F_{x,y}) with `a = (P_x, x)`, `b = (P_y, y)`, `e_i = (P_{yxⁱ}, 1)`.
pub fn margolis_meakin(n: usize) -> ForbiddenInstance<MargolisMeakin> {
    let (x, y) = (Sym(0), Sym(1));
    let ctx = MargolisMeakin { alphabet: Alphabet::new(&["x", "y"]).expect("valid names") };
    ForbiddenInstance {
        a: MMElement::path(&gpow(x, 1)),
        b: MMElement::path(&gpow(y, 1)),
        e: (1..=n as i64).map(|i| MMElement::path(&gpow(y, 1).multiply(&gpow(x, i))).plus()).collect(),
        samples: Vec::new(),
        ctx,
    }
}

/// FAd({a, b}) with generators `a`, `b` and `e_i = (baⁱ)⁺`. Identity
/// transfer is sampled over all trees with at most two edges.
pub fn free_ehresmann(n: usize) -> ForbiddenInstance<FreeEhresmann> {
    let (a, b) = (Sym(0), Sym(1));
    let ctx = FreeEhresmann { alphabet: Alphabet::new(&["a", "b"]).expect("valid names") };
    let bai = |i: usize| XTree::from_word(&Word([b].into_iter().chain(std::iter::repeat_n(a, i)).collect()));
    ForbiddenInstance {
        a: XTree::generator(a),
        b: XTree::generator(b),
        e: (1..=n).map(|i| bai(i).plus()).collect(),
        samples: enumerate_trees(&[a, b], 2, TreeClass::Ehresmann, 1_000_000).expect("small enumeration"),
        ctx,
    }
}

/// The triple `g = (∅, 1)`, `h = (∅, −1)`, `e = ({0}, 0)` in S(ℤ).
pub fn bgr_integers() -> (Sdp<Integers>, [PSetElement<i64>; 3]) {
    (Sdp::new(Integers), [PSetElement::new([], 1), PSetElement::new([], -1), PSetElement::new([0], 0)])
}
