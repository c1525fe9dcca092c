//! Power-set semidirect products `(A, m)(B, n) = (A ∪ mB, mn)` over an
//! arbitrary base monoid, restricted to finite sets.

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use serde_json::{json, Value};

use crate::error::Error;
use crate::words::{Alphabet, GroupWord, Word};

/// A monoid with decidable equality. Elements are canonical values, so `==`
/// is the monoid's equality.
pub trait BaseMonoid {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// `Some` exactly when `a` has a two-sided inverse that the model can name.
    fn invert(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn elem_to_json(&self, a: &Self::Elem) -> Value;

    fn power(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        (0..k).fold(self.identity(), |acc, _| self.multiply(&acc, a))
    }

    fn product<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.identity(), |acc, x| self.multiply(&acc, x))
    }
}

/// Marker for bases whose `invert` is total.
pub trait Group: BaseMonoid {
    fn inverse(&self, a: &Self::Elem) -> Self::Elem {
        self.invert(a).expect("groups invert every element")
    }
}

/// The additive group ℤ.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl BaseMonoid for Integers {
    type Elem = i64;

    fn identity(&self) -> i64 {
        0
    }

    fn multiply(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }

    fn invert(&self, a: &i64) -> Option<i64> {
        Some(-a)
    }

    fn elem_to_json(&self, a: &i64) -> Value {
        json!(a)
    }
}

impl Group for Integers {}

/// The free monoid X*.
#[derive(Clone, Debug)]
pub struct FreeMonoid {
    pub alphabet: Alphabet,
}

impl BaseMonoid for FreeMonoid {
    type Elem = Word;

    fn identity(&self) -> Word {
        Word::empty()
    }

    fn multiply(&self, a: &Word, b: &Word) -> Word {
        a.concat(b)
    }

    fn elem_to_json(&self, a: &Word) -> Value {
        json!(self.alphabet.format_word(a))
    }
}

/// The free group F_X.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    pub alphabet: Alphabet,
}

impl BaseMonoid for FreeGroup {
    type Elem = GroupWord;

    fn identity(&self) -> GroupWord {
        GroupWord::identity()
    }

    fn multiply(&self, a: &GroupWord, b: &GroupWord) -> GroupWord {
        a.multiply(b)
    }

    fn invert(&self, a: &GroupWord) -> Option<GroupWord> {
        Some(a.invert())
    }

    fn elem_to_json(&self, a: &GroupWord) -> Value {
        json!(self.alphabet.format_group_word(a))
    }
}

impl Group for FreeGroup {}

/// `(A, m)` with `A` finite.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PSetElement<E: Ord> {
    pub set: BTreeSet<E>,
    pub point: E,
}

impl<E: Ord + Clone> PSetElement<E> {
    pub fn new<I: IntoIterator<Item = E>>(set: I, point: E) -> Self {
        PSetElement { set: set.into_iter().collect(), point }
    }
}

/// The special semidirect product S^fin(M) over a base `M`.
#[derive(Clone, Debug, Default)]
pub struct Sdp<B> {
    pub base: B,
}

impl<B: BaseMonoid> Sdp<B> {
    pub fn new(base: B) -> Self {
        Sdp { base }
    }

    /// `mB = {mb : b ∈ B}`.
    pub fn translate(&self, m: &B::Elem, set: &BTreeSet<B::Elem>) -> BTreeSet<B::Elem> {
        set.iter().map(|b| self.base.multiply(m, b)).collect()
    }

    pub fn is_idempotent(&self, p: &PSetElement<B::Elem>) -> bool {
        self.multiply(p, p) == *p
    }

    fn point_inverse(&self, p: &PSetElement<B::Elem>) -> Result<B::Elem, Error> {
        self.base.invert(&p.point).ok_or(Error::NotAGroup)
    }

    /// `(g⁻¹A, g⁻¹)`.
    pub fn try_inverse(&self, p: &PSetElement<B::Elem>) -> Result<PSetElement<B::Elem>, Error> {
        let g = self.point_inverse(p)?;
        Ok(PSetElement { set: self.translate(&g, &p.set), point: g })
    }

    /// `(g⁻¹A, 1)`.
    pub fn try_star(&self, p: &PSetElement<B::Elem>) -> Result<PSetElement<B::Elem>, Error> {
        let g = self.point_inverse(p)?;
        Ok(PSetElement { set: self.translate(&g, &p.set), point: self.base.identity() })
    }

    /// `(A, 1)`.
    pub fn try_plus(&self, p: &PSetElement<B::Elem>) -> Result<PSetElement<B::Elem>, Error> {
        self.point_inverse(p)?;
        Ok(PSetElement { set: p.set.clone(), point: self.base.identity() })
    }

    /// `p ≤_L q` iff `p · q⁻¹q = p`.
    pub fn try_leq_l(&self, p: &PSetElement<B::Elem>, q: &PSetElement<B::Elem>) -> Result<bool, Error> {
        self.point_inverse(p)?;
        Ok(self.multiply(p, &self.try_star(q)?) == *p)
    }

    /// `p ≤_R q` iff `qq⁻¹ · p = p`.
    pub fn try_leq_r(&self, p: &PSetElement<B::Elem>, q: &PSetElement<B::Elem>) -> Result<bool, Error> {
        self.point_inverse(p)?;
        Ok(self.multiply(&self.try_plus(q)?, p) == *p)
    }
}

impl<B: BaseMonoid> BaseMonoid for Sdp<B> {
    type Elem = PSetElement<B::Elem>;

    fn identity(&self) -> Self::Elem {
        PSetElement { set: BTreeSet::new(), point: self.base.identity() }
    }

    fn multiply(&self, p: &Self::Elem, q: &Self::Elem) -> Self::Elem {
        let mut set = p.set.clone();
        set.extend(q.set.iter().map(|b| self.base.multiply(&p.point, b)));
        PSetElement { set, point: self.base.multiply(&p.point, &q.point) }
    }

    fn invert(&self, p: &Self::Elem) -> Option<Self::Elem> {
        // Only the units of S(M): (∅, g) with g invertible.
        if !p.set.is_empty() {
            return None;
        }
        Some(PSetElement { set: BTreeSet::new(), point: self.base.invert(&p.point)? })
    }

    fn elem_to_json(&self, p: &Self::Elem) -> Value {
        json!({
            "set": p.set.iter().map(|e| self.base.elem_to_json(e)).collect::<Vec<_>>(),
            "point": self.base.elem_to_json(&p.point),
        })
    }
}

impl<B: Group> Sdp<B> {
    pub fn inverse(&self, p: &PSetElement<B::Elem>) -> PSetElement<B::Elem> {
        self.try_inverse(p).expect("group base")
    }

    pub fn star(&self, p: &PSetElement<B::Elem>) -> PSetElement<B::Elem> {
        self.try_star(p).expect("group base")
    }

    pub fn plus(&self, p: &PSetElement<B::Elem>) -> PSetElement<B::Elem> {
        self.try_plus(p).expect("group base")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;
    use proptest::prelude::*;

    fn z(set: &[i64], point: i64) -> PSetElement<i64> {
        PSetElement::new(set.iter().copied(), point)
    }

    #[test]
    fn integer_products() {
        let s = Sdp::new(Integers);
        assert_eq!(s.multiply(&s.identity(), &z(&[3], 2)), z(&[3], 2));
        assert_eq!(s.multiply(&z(&[0], 1), &z(&[0], 1)), z(&[0, 1], 2));
        // e_{J1} g^{k1} · e_{J2} g^{k2} = e_{J1 ∪ (k1 + J2)} g^{k1 + k2}
        assert_eq!(s.multiply(&z(&[0, 5], 3), &z(&[-1, 2], 4)), z(&[0, 2, 5], 7));
    }

    #[test]
    fn group_operations() {
        let fg = Sdp::new(FreeGroup { alphabet: Alphabet::new(&["x", "g", "h"]).unwrap() });
        let w = |t: &str| fg.base.alphabet.parse_group_word(t).unwrap();
        let p = PSetElement::new([w("1"), w("x")], w("x"));
        assert_eq!(fg.inverse(&p), PSetElement::new([w("x^-1"), w("1")], w("x^-1")));
        assert_eq!(fg.inverse(&fg.identity()), fg.identity());
        assert!(!fg.is_idempotent(&p));

        let a = PSetElement::new([w("1"), w("g")], w("g"));
        let b = PSetElement::new([w("1"), w("h")], w("h"));
        let star = fg.star(&fg.multiply(&b, &a));
        assert_eq!(star, PSetElement::new([w("g^-1 h^-1"), w("g^-1"), w("1")], w("1")));
        assert_eq!(fg.plus(&PSetElement::new([], w("g"))), fg.identity());

        let s = Sdp::new(Integers);
        assert_eq!(s.inverse(&z(&[0], 0)), z(&[0], 0));
        assert!(s.is_idempotent(&z(&[0], 0)));
    }

    #[test]
    fn non_group_base_is_rejected() {
        let fm = Sdp::new(FreeMonoid { alphabet: Alphabet::standard(1) });
        let p = PSetElement::new([Word::empty()], Word(vec![crate::words::Sym(0)]));
        assert_eq!(fm.try_inverse(&p), Err(Error::NotAGroup));
        assert_eq!(fm.try_star(&p), Err(Error::NotAGroup));
        assert_eq!(fm.try_leq_l(&p, &p), Err(Error::NotAGroup));
    }

    fn element() -> impl Strategy<Value = PSetElement<i64>> {
        (prop::collection::btree_set(-4i64..5, 0..4), -3i64..4).prop_map(|(set, point)| PSetElement { set, point })
    }

    proptest! {
        #[test]
        fn multiply_associates(p in element(), q in element(), r in element()) {
            let s = Sdp::new(Integers);
            prop_assert_eq!(s.multiply(&s.multiply(&p, &q), &r), s.multiply(&p, &s.multiply(&q, &r)));
        }

        #[test]
        fn inverse_laws(p in element()) {
            let s = Sdp::new(Integers);
            let q = s.inverse(&p);
            prop_assert_eq!(s.product([&p, &q, &p]), p.clone());
            prop_assert_eq!(s.product([&q, &p, &q]), q);
            let (st, pl) = (s.star(&p), s.plus(&p));
            prop_assert!(s.is_idempotent(&st) && s.is_idempotent(&pl));
            prop_assert_eq!(s.multiply(&pl, &p), p.clone());
            prop_assert_eq!(s.multiply(&p, &st), p);
        }

        #[test]
        fn leq_l_is_a_preorder(p in element(), q in element(), r in element()) {
            let s = Sdp::new(Integers);
            prop_assert!(s.try_leq_l(&p, &p).unwrap());
            if s.try_leq_l(&p, &q).unwrap() && s.try_leq_l(&q, &r).unwrap() {
                prop_assert!(s.try_leq_l(&p, &r).unwrap());
            }
        }
    }
}
