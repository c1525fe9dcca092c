//! The free inverse monoid FI(X) as pairs (A, a) with A a finite
//! prefix-closed subset of F_X and a ∈ A, and its submonoids FA(X), FLA(X).

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::Error;
use crate::psdp::BaseMonoid;
use crate::words::{is_prefix_closed, Alphabet, GroupWord, Letter};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MunnElement {
    set: BTreeSet<GroupWord>,
    point: GroupWord,
}

impl MunnElement {
    pub fn new<I: IntoIterator<Item = GroupWord>>(set: I, point: GroupWord) -> Result<MunnElement, Error> {
        let set: BTreeSet<GroupWord> = set.into_iter().collect();
        if set.is_empty() || !is_prefix_closed(&set) || !set.contains(&point) {
            return Err(Error::InvalidElement(
                "Munn pair needs a non-empty prefix-closed set containing its point".into(),
            ));
        }
        Ok(MunnElement { set, point })
    }

    pub fn identity() -> MunnElement {
        MunnElement { set: [GroupWord::identity()].into(), point: GroupWord::identity() }
    }

    /// `x ↦ ({1, x}, x)`, and likewise for `x⁻¹`.
    pub fn generator(letter: Letter) -> MunnElement {
        let g = GroupWord::from_letters([letter]);
        MunnElement { set: g.prefixes(), point: g }
    }

    /// Product of generator images; the empty sequence gives the identity.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> MunnElement {
        letters.into_iter().fold(MunnElement::identity(), |acc, l| acc.multiply(&MunnElement::generator(l)))
    }

    pub fn set(&self) -> &BTreeSet<GroupWord> {
        &self.set
    }

    pub fn point(&self) -> &GroupWord {
        &self.point
    }

    pub fn multiply(&self, other: &MunnElement) -> MunnElement {
        let mut set = self.set.clone();
        set.extend(other.set.iter().map(|b| self.point.multiply(b)));
        MunnElement { set, point: self.point.multiply(&other.point) }
    }

    pub fn inverse(&self) -> MunnElement {
        let g = self.point.invert();
        MunnElement { set: self.set.iter().map(|a| g.multiply(a)).collect(), point: g }
    }

    pub fn plus(&self) -> MunnElement {
        MunnElement { set: self.set.clone(), point: GroupWord::identity() }
    }

    pub fn star(&self) -> MunnElement {
        self.inverse().plus()
    }

    pub fn is_idempotent(&self) -> bool {
        self.point.is_empty()
    }

    pub fn in_fa(&self) -> bool {
        self.point.is_positive()
    }

    pub fn in_fla(&self) -> bool {
        self.set.iter().all(GroupWord::is_positive)
    }

    /// `r ∈ pS` iff `pp⁻¹r = r`.
    pub fn in_right_ideal_of(&self, p: &MunnElement) -> bool {
        p.plus().multiply(self) == *self
    }

    /// The generator `pp⁻¹qq⁻¹` of `pS ∩ qS`.
    pub fn principal_intersection(&self, q: &MunnElement) -> MunnElement {
        self.plus().multiply(&q.plus())
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "set": self.set.iter().map(|g| alphabet.format_group_word(g)).collect::<Vec<_>>(),
            "point": alphabet.format_group_word(&self.point),
        })
    }
}

/// FI(X) as a model for the generic checkers.
#[derive(Clone, Debug)]
pub struct FreeInverse {
    pub alphabet: Alphabet,
}

impl BaseMonoid for FreeInverse {
    type Elem = MunnElement;

    fn identity(&self) -> MunnElement {
        MunnElement::identity()
    }

    fn multiply(&self, a: &MunnElement, b: &MunnElement) -> MunnElement {
        a.multiply(b)
    }

    fn invert(&self, a: &MunnElement) -> Option<MunnElement> {
        (a.set.len() == 1).then(MunnElement::identity)
    }

    fn elem_to_json(&self, a: &MunnElement) -> Value {
        a.to_json(&self.alphabet)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Sym;
    use proptest::prelude::*;

    fn alphabet() -> Alphabet {
        Alphabet::new(&["x", "y"]).unwrap()
    }

    fn gw(t: &str) -> GroupWord {
        alphabet().parse_group_word(t).unwrap()
    }

    fn m(set: &[&str], point: &str) -> MunnElement {
        MunnElement::new(set.iter().map(|s| gw(s)), gw(point)).unwrap()
    }

    fn word(t: &str) -> MunnElement {
        MunnElement::from_letters(gw(t).letters().iter().copied())
    }

    #[test]
    fn products() {
        assert_eq!(m(&["1", "x"], "x").multiply(&m(&["1", "x^-1"], "x^-1")), m(&["1", "x"], "1"));
        let x = word("x");
        assert_eq!(x.multiply(&x.inverse()).multiply(&x), x);
        assert_eq!(m(&["1", "y"], "y").multiply(&m(&["1", "x"], "x")), m(&["1", "y", "y x"], "y x"));
    }

    #[test]
    fn generator_words() {
        assert_eq!(word("x"), m(&["1", "x"], "x"));
        let xx = MunnElement::from_letters([Letter::pos(Sym(0)), Letter::neg(Sym(0))]);
        assert_eq!(xx, m(&["1", "x"], "1"));
        assert_eq!(MunnElement::from_letters([]), MunnElement::identity());
    }

    #[test]
    fn submonoid_membership() {
        let p = m(&["1", "x"], "1");
        assert!(p.in_fa() && p.in_fla());
        assert!(!m(&["1", "x^-1"], "x^-1").in_fa());
        let q = m(&["1", "x", "x y^-1"], "x");
        assert!(q.in_fa() && !q.in_fla());
    }

    #[test]
    fn principal_intersections() {
        let p = m(&["1", "x"], "x");
        let q = m(&["1", "y"], "y");
        assert_eq!(p.principal_intersection(&q), m(&["1", "x", "y"], "1"));
        let g = p.principal_intersection(&p);
        assert!(g.in_right_ideal_of(&p) && p.in_right_ideal_of(&g));
        let (e, f) = (p.plus(), q.plus());
        assert_eq!(e.principal_intersection(&f), e.multiply(&f));
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        assert!(MunnElement::new([gw("x y")], gw("x y")).is_err());
        assert!(MunnElement::new([gw("1")], gw("x")).is_err());
        assert!(MunnElement::new([], gw("1")).is_err());
    }

    fn element() -> impl Strategy<Value = MunnElement> {
        prop::collection::vec((0u32..2, any::<bool>()), 0..6)
            .prop_map(|v| MunnElement::from_letters(v.into_iter().map(|(s, inverse)| Letter { sym: Sym(s), inverse })))
    }

    fn positive_element() -> impl Strategy<Value = MunnElement> {
        prop::collection::vec((0u32..2, 0u8..3), 0..6).prop_map(|v| {
            // Letters followed by optional x x⁻¹ detours stay inside FLA(X).
            v.into_iter().fold(MunnElement::identity(), |acc, (s, kind)| {
                let x = MunnElement::generator(Letter::pos(Sym(s)));
                match kind {
                    0 => acc.multiply(&x),
                    _ => acc.multiply(&x.multiply(&x.inverse())),
                }
            })
        })
    }

    proptest! {
        #[test]
        fn products_stay_valid(p in element(), q in element()) {
            let r = p.multiply(&q);
            prop_assert!(MunnElement::new(r.set.clone(), r.point.clone()).is_ok());
        }

        #[test]
        fn fla_is_closed(p in positive_element(), q in positive_element()) {
            prop_assert!(p.in_fla() && q.in_fla());
            prop_assert!(p.multiply(&q).in_fla() && p.multiply(&q).in_fa());
        }

        #[test]
        fn idempotents_commute(p in element(), q in element()) {
            let (e, f) = (p.plus(), q.star());
            prop_assert!(e.is_idempotent() && e.multiply(&e) == e);
            prop_assert_eq!(e.multiply(&f), f.multiply(&e));
            prop_assert_eq!(p.is_idempotent(), p.multiply(&p) == p);
        }

        #[test]
        fn intersection_generates(p in element(), q in element(), r in element()) {
            let g = p.principal_intersection(&q);
            let both = r.in_right_ideal_of(&p) && r.in_right_ideal_of(&q);
            prop_assert_eq!(both, r.in_right_ideal_of(&g));
        }
    }
}
