use crate::expansions::{MargolisMeakin, Qn, Sz};
use crate::psdp::{BaseMonoid, Group, PSetElement, Sdp};
use crate::scheiblich::{FreeInverse, MunnElement};
use crate::xtree::{FreeEhresmann, XTree};

/// A monoid with a semilattice E of projections and the operations
/// `a ↦ a*` (right identity in E) and `a ↦ a⁺` (left identity in E).
pub trait EhresmannContext: BaseMonoid {
    fn star(&self, a: &Self::Elem) -> Self::Elem;
    fn plus(&self, a: &Self::Elem) -> Self::Elem;

    /// Membership in E.
    fn is_projection(&self, a: &Self::Elem) -> bool;

    /// `a ≤ b` in the right-identity preorder: every right identity of `b`
    /// from E is one of `a`, equivalently `a·b* = a`.
    fn leq_ltilde(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.multiply(a, &self.star(b)) == *a
    }

    /// Dual of [`EhresmannContext::leq_ltilde`].
    fn leq_rtilde(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.multiply(&self.plus(b), a) == *a
    }

    /// E-unitary inverse monoids satisfy the structural hypotheses of the
    /// forbidden-configuration theorem outright, so checkers skip them.
    fn is_e_unitary_inverse(&self) -> bool {
        false
    }
}

impl<B: Group> EhresmannContext for Sdp<B> {
    fn star(&self, a: &PSetElement<B::Elem>) -> PSetElement<B::Elem> {
        Sdp::star(self, a)
    }

    fn plus(&self, a: &PSetElement<B::Elem>) -> PSetElement<B::Elem> {
        Sdp::plus(self, a)
    }

    fn is_projection(&self, a: &PSetElement<B::Elem>) -> bool {
        a.point == self.base.identity()
    }

    fn is_e_unitary_inverse(&self) -> bool {
        true
    }
}

impl<B: Group> EhresmannContext for Sz<B> {
    fn star(&self, a: &PSetElement<B::Elem>) -> PSetElement<B::Elem> {
        self.sdp.star(a)
    }

    fn plus(&self, a: &PSetElement<B::Elem>) -> PSetElement<B::Elem> {
        self.sdp.plus(a)
    }

    fn is_projection(&self, a: &PSetElement<B::Elem>) -> bool {
        a.point == self.sdp.base.identity()
    }

    fn is_e_unitary_inverse(&self) -> bool {
        true
    }
}

impl<B: Group> EhresmannContext for Qn<B> {
    fn star(&self, a: &Self::Elem) -> Self::Elem {
        Qn::star(self, a)
    }

    fn plus(&self, a: &Self::Elem) -> Self::Elem {
        Qn::plus(self, a)
    }

    fn is_projection(&self, a: &Self::Elem) -> bool {
        a.point == self.base.identity()
    }

    fn is_e_unitary_inverse(&self) -> bool {
        true
    }
}

impl EhresmannContext for FreeInverse {
    fn star(&self, a: &MunnElement) -> MunnElement {
        a.star()
    }

    fn plus(&self, a: &MunnElement) -> MunnElement {
        a.plus()
    }

    fn is_projection(&self, a: &MunnElement) -> bool {
        a.is_idempotent()
    }

    fn is_e_unitary_inverse(&self) -> bool {
        true
    }
}

impl EhresmannContext for MargolisMeakin {
    fn star(&self, a: &Self::Elem) -> Self::Elem {
        a.star()
    }

    fn plus(&self, a: &Self::Elem) -> Self::Elem {
        a.plus()
    }

    fn is_projection(&self, a: &Self::Elem) -> bool {
        a.is_idempotent()
    }

    fn is_e_unitary_inverse(&self) -> bool {
        true
    }
}

impl EhresmannContext for FreeEhresmann {
    fn star(&self, a: &XTree) -> XTree {
        a.star()
    }

    fn plus(&self, a: &XTree) -> XTree {
        a.plus()
    }

    fn is_projection(&self, a: &XTree) -> bool {
        a.is_idempotent()
    }
}
