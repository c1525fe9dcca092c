//! Expansions of groups inside special semidirect products: the
//! Margolis–Meakin expansion M(F_X, X), the Szendrei expansion Sz(G) and the
//! threshold quotients Q_n(G).

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::coherence::report::ReportBuilder;
use crate::coherence::ConfigReport;
use crate::error::Error;
use crate::psdp::{BaseMonoid, Group, PSetElement, Sdp};
use crate::scheiblich::MunnElement;
use crate::words::{is_prefix_closed, Alphabet, GroupWord, Letter, Sym};

/// A finite subgraph of the Cayley graph of F_X; `(h, x)` is the edge
/// `h → hx`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct CayleySubgraph {
    pub vertices: BTreeSet<GroupWord>,
    pub edges: BTreeSet<(GroupWord, Sym)>,
}

impl CayleySubgraph {
    /// The single vertex 1.
    pub fn trivial() -> CayleySubgraph {
        CayleySubgraph { vertices: [GroupWord::identity()].into(), edges: BTreeSet::new() }
    }

    /// Vertices and edges met by the reduced path from 1 to `g`.
    pub fn path(g: &GroupWord) -> CayleySubgraph {
        let mut out = CayleySubgraph::trivial();
        let mut at = GroupWord::identity();
        for &l in g.letters() {
            let next = at.multiply(&GroupWord::from_letters([l]));
            out.edges.insert(if l.inverse { (next.clone(), l.sym) } else { (at.clone(), l.sym) });
            out.vertices.insert(next.clone());
            at = next;
        }
        out
    }

    /// Every Cayley edge between two vertices of a prefix-closed set.
    fn induced(vertices: &BTreeSet<GroupWord>) -> BTreeSet<(GroupWord, Sym)> {
        vertices
            .iter()
            .filter_map(|v| {
                let (parent, l) = v.parent()?;
                Some(if l.inverse { (v.clone(), l.sym) } else { (parent, l.sym) })
            })
            .collect()
    }

    pub fn translate(&self, g: &GroupWord) -> CayleySubgraph {
        CayleySubgraph {
            vertices: self.vertices.iter().map(|v| g.multiply(v)).collect(),
            edges: self.edges.iter().map(|(h, x)| (g.multiply(h), *x)).collect(),
        }
    }

    pub fn union(&self, other: &CayleySubgraph) -> CayleySubgraph {
        CayleySubgraph {
            vertices: self.vertices.union(&other.vertices).cloned().collect(),
            edges: self.edges.union(&other.edges).cloned().collect(),
        }
    }

    fn endpoints_present(&self) -> bool {
        self.edges
            .iter()
            .all(|(h, x)| self.vertices.contains(h) && self.vertices.contains(&h.multiply(&GroupWord::generator(*x))))
    }

    /// Connected in the undirected sense.
    pub fn is_connected(&self) -> bool {
        let Some(first) = self.vertices.iter().next() else {
            return true;
        };
        let mut seen: BTreeSet<GroupWord> = [first.clone()].into();
        let mut stack = vec![first.clone()];
        while let Some(v) = stack.pop() {
            for (h, x) in &self.edges {
                let t = h.multiply(&GroupWord::generator(*x));
                let other = if *h == v {
                    t
                } else if t == v {
                    h.clone()
                } else {
                    continue;
                };
                if seen.insert(other.clone()) {
                    stack.push(other);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Mirrors the tree JSON shape with reduced words as vertex ids.
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let name = |g: &GroupWord| alphabet.format_group_word(g);
        json!({
            "vertices": self.vertices.iter().map(name).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(h, x)| json!({
                "from": name(h),
                "label": alphabet.name(*x),
                "to": name(&h.multiply(&GroupWord::generator(*x))),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let name = |g: &GroupWord| alphabet.format_group_word(g);
        let mut out = String::from("digraph cayley {\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{}\";\n", name(v)));
        }
        for (h, x) in &self.edges {
            let to = h.multiply(&GroupWord::generator(*x));
            out.push_str(&format!("  \"{}\" -> \"{}\" [label=\"{}\"];\n", name(h), name(&to), alphabet.name(*x)));
        }
        out.push_str("}\n");
        out
    }
}

/// `(P, g)` with P finite, connected, containing 1 and g.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MMElement {
    graph: CayleySubgraph,
    point: GroupWord,
}

impl MMElement {
    pub fn new(graph: CayleySubgraph, point: GroupWord) -> Result<MMElement, Error> {
        if !graph.vertices.contains(&GroupWord::identity())
            || !graph.vertices.contains(&point)
            || !graph.endpoints_present()
            || !graph.is_connected()
        {
            return Err(Error::InvalidElement("expected a connected subgraph containing 1 and the point".into()));
        }
        Ok(MMElement { graph, point })
    }

    pub fn identity() -> MMElement {
        MMElement { graph: CayleySubgraph::trivial(), point: GroupWord::identity() }
    }

    /// `x ↦ (P_x, x)`.
    pub fn generator(letter: Letter) -> MMElement {
        MMElement::path(&GroupWord::from_letters([letter]))
    }

    /// `(P_g, g)`.
    pub fn path(g: &GroupWord) -> MMElement {
        MMElement { graph: CayleySubgraph::path(g), point: g.clone() }
    }

    pub fn graph(&self) -> &CayleySubgraph {
        &self.graph
    }

    pub fn point(&self) -> &GroupWord {
        &self.point
    }

    pub fn multiply(&self, other: &MMElement) -> MMElement {
        MMElement {
            graph: self.graph.union(&other.graph.translate(&self.point)),
            point: self.point.multiply(&other.point),
        }
    }

    pub fn inverse(&self) -> MMElement {
        let g = self.point.invert();
        MMElement { graph: self.graph.translate(&g), point: g }
    }

    pub fn plus(&self) -> MMElement {
        MMElement { graph: self.graph.clone(), point: GroupWord::identity() }
    }

    pub fn star(&self) -> MMElement {
        self.inverse().plus()
    }

    pub fn is_idempotent(&self) -> bool {
        self.point.is_empty()
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({"graph": self.graph.to_json(alphabet), "point": alphabet.format_group_word(&self.point)})
    }
}

pub fn mm_to_munn(p: &MMElement) -> Result<MunnElement, Error> {
    let v = &p.graph.vertices;
    if !is_prefix_closed(v) || CayleySubgraph::induced(v) != p.graph.edges {
        return Err(Error::InvalidElement("vertex set does not determine the subgraph".into()));
    }
    MunnElement::new(v.iter().cloned(), p.point.clone())
}

pub fn munn_to_mm(q: &MunnElement) -> MMElement {
    let graph = CayleySubgraph { vertices: q.set().clone(), edges: CayleySubgraph::induced(q.set()) };
    MMElement { graph, point: q.point().clone() }
}

/// Checks that [`mm_to_munn`] and [`munn_to_mm`] are mutually inverse and
/// multiplicative on every product of at most `max_len` generators and
/// inverse generators over `letters` letters, computed independently in
/// both models.
pub fn check_mm_fi_iso(letters: usize, max_len: usize) -> ConfigReport {
    let mut r = ReportBuilder::new(max_len);
    let alphabet: Vec<Letter> = (0..letters as u32).flat_map(|i| [Letter::pos(Sym(i)), Letter::neg(Sym(i))]).collect();
    let mut level = vec![(Vec::<Letter>::new(), MunnElement::identity(), MMElement::identity())];
    let mut short = Vec::new();
    for len in 0..=max_len {
        let mut next = Vec::new();
        for (w, munn, mm) in &level {
            let names = Alphabet::standard(letters);
            let witness = || {
                let text: Vec<String> =
                    w.iter().map(|l| format!("{}{}", names.name(l.sym), if l.inverse { "^-1" } else { "" })).collect();
                json!({"word": text.join(" ")})
            };
            r.require("iso-forward", munn_to_mm(munn) == *mm, witness);
            r.require("iso-backward", mm_to_munn(mm).as_ref() == Ok(munn), witness);
            if 2 * len <= max_len {
                short.push((munn.clone(), mm.clone()));
            }
            if len < max_len {
                for &l in &alphabet {
                    let w2 = [w.clone(), vec![l]].concat();
                    next.push((w2, munn.multiply(&MunnElement::generator(l)), mm.multiply(&MMElement::generator(l))));
                }
            }
        }
        level = next;
    }
    for (p, pm) in &short {
        for (q, qm) in &short {
            r.require(
                "multiplicative",
                munn_to_mm(&p.multiply(q)) == pm.multiply(qm),
                || json!({"left": p.point().to_string(), "right": q.point().to_string()}),
            );
        }
    }
    r.finish()
}

/// M(F_X, X) as a model for the generic checkers.
#[derive(Clone, Debug)]
pub struct MargolisMeakin {
    pub alphabet: Alphabet,
}

impl BaseMonoid for MargolisMeakin {
    type Elem = MMElement;

    fn identity(&self) -> MMElement {
        MMElement::identity()
    }

    fn multiply(&self, a: &MMElement, b: &MMElement) -> MMElement {
        a.multiply(b)
    }

    fn invert(&self, a: &MMElement) -> Option<MMElement> {
        (a.graph.vertices.len() == 1).then(MMElement::identity)
    }

    fn elem_to_json(&self, a: &MMElement) -> Value {
        a.to_json(&self.alphabet)
    }
}

/// Sz(G) = {(A, g) : 1, g ∈ A}, a submonoid of S^fin(G) with identity ({1}, 1).
#[derive(Clone, Debug, Default)]
pub struct Sz<B> {
    pub sdp: Sdp<B>,
}

impl<B: Group> Sz<B> {
    pub fn new(base: B) -> Sz<B> {
        Sz { sdp: Sdp::new(base) }
    }

    pub fn element<I: IntoIterator<Item = B::Elem>>(
        &self,
        set: I,
        point: B::Elem,
    ) -> Result<PSetElement<B::Elem>, Error> {
        let p = PSetElement::new(set, point);
        if !p.set.contains(&self.sdp.base.identity()) || !p.set.contains(&p.point) {
            return Err(Error::InvalidElement("Sz(G) elements contain 1 and their point".into()));
        }
        Ok(p)
    }

    pub fn inverse(&self, p: &PSetElement<B::Elem>) -> PSetElement<B::Elem> {
        self.sdp.inverse(p)
    }
}

impl<B: Group> BaseMonoid for Sz<B> {
    type Elem = PSetElement<B::Elem>;

    fn identity(&self) -> Self::Elem {
        PSetElement::new([self.sdp.base.identity()], self.sdp.base.identity())
    }

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sdp.multiply(a, b)
    }

    fn invert(&self, a: &Self::Elem) -> Option<Self::Elem> {
        (a.set.len() == 1).then(|| self.identity())
    }

    fn elem_to_json(&self, a: &Self::Elem) -> Value {
        self.sdp.elem_to_json(a)
    }
}

/// A set of fewer than n elements, or all of G.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum QSet<E: Ord> {
    Finite(BTreeSet<E>),
    Top,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QnElement<E: Ord> {
    pub set: QSet<E>,
    pub point: E,
}

/// Q_n(G): S(G) with every set of size ≥ n collapsed to G.
#[derive(Clone, Debug)]
pub struct Qn<B> {
    pub base: B,
    pub n: usize,
}

impl<B: Group> Qn<B> {
    pub fn new(base: B, n: usize) -> Qn<B> {
        Qn { base, n }
    }

    /// The quotient map from S^fin(G).
    pub fn project(&self, p: &PSetElement<B::Elem>) -> QnElement<B::Elem> {
        self.truncate(p.set.clone(), p.point.clone())
    }

    fn truncate(&self, set: BTreeSet<B::Elem>, point: B::Elem) -> QnElement<B::Elem> {
        let set = if set.len() < self.n { QSet::Finite(set) } else { QSet::Top };
        QnElement { set, point }
    }

    pub fn inverse(&self, p: &QnElement<B::Elem>) -> QnElement<B::Elem> {
        let g = self.base.inverse(&p.point);
        let set = match &p.set {
            QSet::Finite(s) => QSet::Finite(s.iter().map(|a| self.base.multiply(&g, a)).collect()),
            QSet::Top => QSet::Top,
        };
        QnElement { set, point: g }
    }

    pub fn plus(&self, p: &QnElement<B::Elem>) -> QnElement<B::Elem> {
        QnElement { set: p.set.clone(), point: self.base.identity() }
    }

    pub fn star(&self, p: &QnElement<B::Elem>) -> QnElement<B::Elem> {
        self.plus(&self.inverse(p))
    }
}

impl<B: Group> BaseMonoid for Qn<B> {
    type Elem = QnElement<B::Elem>;

    fn identity(&self) -> Self::Elem {
        self.truncate(BTreeSet::new(), self.base.identity())
    }

    fn multiply(&self, p: &Self::Elem, q: &Self::Elem) -> Self::Elem {
        let point = self.base.multiply(&p.point, &q.point);
        match (&p.set, &q.set) {
            (QSet::Finite(a), QSet::Finite(b)) => {
                let mut set = a.clone();
                set.extend(b.iter().map(|y| self.base.multiply(&p.point, y)));
                self.truncate(set, point)
            }
            _ => QnElement { set: QSet::Top, point },
        }
    }

    fn invert(&self, p: &Self::Elem) -> Option<Self::Elem> {
        matches!(&p.set, QSet::Finite(s) if s.is_empty()).then(|| self.inverse(p))
    }

    fn elem_to_json(&self, p: &Self::Elem) -> Value {
        let set = match &p.set {
            QSet::Finite(s) => Value::Array(s.iter().map(|e| self.base.elem_to_json(e)).collect()),
            QSet::Top => Value::String("top".into()),
        };
        json!({"set": set, "point": self.base.elem_to_json(&p.point)})
    }
}
