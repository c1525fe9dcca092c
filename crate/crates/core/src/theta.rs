//! The morphism θ from the free product of X* and the idempotent trees into
//! the semidirect product of a semilattice Z_X by the free group F_X.
//!
//! Z_X is the free semilattice on generators `y_{x,h}` (x ∈ X, h ∈ F_X) and
//! `e_{f,h}` (f a non-trivial idempotent tree), modulo
//! `e_{f,h}·e_{f',h} = e_{ff',h}`. Elements are stored in that normal form:
//! a set of `y`s and at most one idempotent per position `h`.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::coherence::report::ReportBuilder;
use crate::coherence::ConfigReport;
use crate::error::Error;
use crate::words::{Alphabet, GroupWord, Sym, Word};
use crate::xtree::{enumerate_trees, TreeClass, XTree};

/// One part of an alternating word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CXPart {
    Word(Word),
    Idempotent(XTree),
}

/// An element of the free product, as an alternating sequence of non-empty
/// words and non-trivial idempotents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct CXWord {
    parts: Vec<CXPart>,
}

impl CXWord {
    pub fn identity() -> CXWord {
        CXWord::default()
    }

    /// Normalizes: drops identities and merges neighbours of the same kind.
    pub fn from_parts<I: IntoIterator<Item = CXPart>>(parts: I) -> Result<CXWord, Error> {
        let mut out: Vec<CXPart> = Vec::new();
        for part in parts {
            match part {
                CXPart::Word(w) if w.is_empty() => {}
                CXPart::Idempotent(f) if !f.is_idempotent() => return Err(Error::NotIdempotent),
                CXPart::Idempotent(f) if f.is_identity() => {}
                part => match (out.last_mut(), part) {
                    (Some(CXPart::Word(u)), CXPart::Word(w)) => *u = u.concat(&w),
                    (Some(CXPart::Idempotent(e)), CXPart::Idempotent(f)) => *e = e.multiply(&f),
                    (_, part) => out.push(part),
                },
            }
        }
        Ok(CXWord { parts: out })
    }

    pub fn word(w: &Word) -> CXWord {
        CXWord::from_parts([CXPart::Word(w.clone())]).expect("words are always valid parts")
    }

    pub fn idempotent(f: &XTree) -> Result<CXWord, Error> {
        CXWord::from_parts([CXPart::Idempotent(f.clone())])
    }

    pub fn parts(&self) -> &[CXPart] {
        &self.parts
    }

    pub fn multiply(&self, other: &CXWord) -> CXWord {
        CXWord::from_parts(self.parts.iter().chain(&other.parts).cloned()).expect("parts already validated")
    }

    /// The word obtained by omitting every idempotent.
    pub fn trunk(&self) -> Word {
        self.parts.iter().fold(Word::empty(), |acc, p| match p {
            CXPart::Word(w) => acc.concat(w),
            CXPart::Idempotent(_) => acc,
        })
    }

    /// The image in FAd(X).
    pub fn to_tree(&self) -> XTree {
        self.parts.iter().fold(XTree::identity(), |acc, p| match p {
            CXPart::Word(w) => acc.multiply(&XTree::from_word(w)),
            CXPart::Idempotent(f) => acc.multiply(f),
        })
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        if self.parts.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| match p {
                CXPart::Word(w) => alphabet.format_word(w),
                CXPart::Idempotent(f) => format!("[{}]", f.to_term(alphabet)),
            })
            .collect();
        parts.join(" ")
    }
}

/// An element of Z_X.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ZXElement {
    ys: BTreeSet<(Sym, GroupWord)>,
    es: BTreeMap<GroupWord, XTree>,
}

impl ZXElement {
    pub fn identity() -> ZXElement {
        ZXElement::default()
    }

    /// `y_{x,h}`.
    pub fn y(x: Sym, h: GroupWord) -> ZXElement {
        ZXElement { ys: BTreeSet::from([(x, h)]), es: BTreeMap::new() }
    }

    /// `e_{f,h}`; `f` must be a non-trivial idempotent.
    pub fn e(f: &XTree, h: GroupWord) -> Result<ZXElement, Error> {
        if !f.is_idempotent() || f.is_identity() {
            return Err(Error::InvalidElement("expected a non-trivial idempotent tree".into()));
        }
        Ok(ZXElement { ys: BTreeSet::new(), es: BTreeMap::from([(h, f.clone())]) })
    }

    pub fn ys(&self) -> &BTreeSet<(Sym, GroupWord)> {
        &self.ys
    }

    pub fn es(&self) -> &BTreeMap<GroupWord, XTree> {
        &self.es
    }

    pub fn is_identity(&self) -> bool {
        self.ys.is_empty() && self.es.is_empty()
    }

    pub fn multiply(&self, other: &ZXElement) -> ZXElement {
        let mut out = self.clone();
        out.ys.extend(other.ys.iter().cloned());
        for (h, f) in &other.es {
            out.es.entry(h.clone()).and_modify(|e| *e = e.multiply(f)).or_insert_with(|| f.clone());
        }
        out
    }

    /// The action `g·y_{x,h} = y_{x,gh}`, `g·e_{f,h} = e_{f,gh}`.
    pub fn act(&self, g: &GroupWord) -> ZXElement {
        ZXElement {
            ys: self.ys.iter().map(|(x, h)| (*x, g.multiply(h))).collect(),
            es: self.es.iter().map(|(h, f)| (g.multiply(h), f.clone())).collect(),
        }
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "ys": self.ys.iter().map(|(x, h)| json!({
                "x": alphabet.name(*x),
                "h": alphabet.format_group_word(h),
            })).collect::<Vec<_>>(),
            "es": self.es.iter().map(|(h, f)| json!({
                "h": alphabet.format_group_word(h),
                "f": f.to_json(alphabet),
            })).collect::<Vec<_>>(),
        })
    }
}

/// An element `(z, g)` of the semidirect product Z_X ⋊ F_X.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ThetaImage {
    pub first: ZXElement,
    pub second: GroupWord,
}

impl ThetaImage {
    /// `(z, g)(z', g') = (z·(g·z'), gg')`.
    pub fn multiply(&self, other: &ThetaImage) -> ThetaImage {
        ThetaImage {
            first: self.first.multiply(&other.first.act(&self.second)),
            second: self.second.multiply(&other.second),
        }
    }

    /// `(z, g)⁺ = (z, 1)`.
    pub fn plus(&self) -> ThetaImage {
        ThetaImage { first: self.first.clone(), second: GroupWord::identity() }
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({"first": self.first.to_json(alphabet), "second": alphabet.format_group_word(&self.second)})
    }
}

/// `τ_{w,h} = y_{x₁,h} y_{x₂,hx₁} ⋯ y_{x_n,hx₁⋯x_{n−1}}` for `w = x₁⋯x_n`.
pub fn tau(w: &Word, h: &GroupWord) -> Result<ZXElement, Error> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut at = h.clone();
    let mut out = ZXElement::identity();
    for &x in &w.0 {
        out.ys.insert((x, at.clone()));
        at = at.multiply(&GroupWord::generator(x));
    }
    Ok(out)
}

/// `τ_{w,1} = τ_{h,1} τ_{v,h} τ_{u,hv}` for `w = hvu`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TauFactors {
    pub u: Word,
    /// The non-empty factors among the three, in order.
    pub factors: Vec<ZXElement>,
}

/// Splits `τ_{w,1}` around an occurrence of `v` at offset `h`. `None`
/// unless `h` is a positive word with `w = hvu`.
pub fn tau_factor(v: &Word, h: &GroupWord, w: &Word) -> Option<TauFactors> {
    let h = h.to_word()?;
    let hv = h.concat(v);
    if v.is_empty() || !hv.is_prefix_of(w) {
        return None;
    }
    let u = Word(w.0[hv.len()..].to_vec());
    let pieces = [(&h, Word::empty()), (v, h.clone()), (&u, hv)];
    let factors: Vec<ZXElement> = pieces
        .iter()
        .filter(|(piece, _)| !piece.is_empty())
        .map(|(piece, at)| tau(piece, &at.to_group_word()).expect("non-empty"))
        .collect();
    let product = factors.iter().fold(ZXElement::identity(), |acc, f| acc.multiply(f));
    debug_assert_eq!(Some(product), tau(w, &GroupWord::identity()).ok());
    Some(TauFactors { u, factors })
}

/// `(p, f)` for each idempotent `f` of `γ`, with `p` the trunk read before
/// it. Idempotents sit between non-empty words, so positions are distinct.
pub fn splitting_positions(gamma: &CXWord) -> Vec<(Word, XTree)> {
    let mut prefix = Word::empty();
    let mut out = Vec::new();
    for part in &gamma.parts {
        match part {
            CXPart::Word(w) => prefix = prefix.concat(w),
            CXPart::Idempotent(f) => out.push((prefix.clone(), f.clone())),
        }
    }
    out
}

/// `γθ = (τ_{c,1} Π e_{l(p,γ),p}, c)` with `c` the trunk of `γ`.
pub fn theta(gamma: &CXWord) -> ThetaImage {
    let c = gamma.trunk();
    let mut first =
        if c.is_empty() { ZXElement::identity() } else { tau(&c, &GroupWord::identity()).expect("non-empty") };
    for (p, f) in splitting_positions(gamma) {
        first = first.multiply(&ZXElement::e(&f, p.to_group_word()).expect("parts are non-trivial idempotents"));
    }
    ThetaImage { first, second: c.to_group_word() }
}

/// θ as the product of its values on single parts: `[w] ↦ (τ_{w,1}, w)` and
/// `[f] ↦ (e_{f,1}, 1)`.
pub fn theta_direct(gamma: &CXWord) -> ThetaImage {
    gamma.parts.iter().fold(ThetaImage::default(), |acc, part| {
        let image = match part {
            CXPart::Word(w) => ThetaImage {
                first: tau(w, &GroupWord::identity()).expect("parts are non-empty"),
                second: w.to_group_word(),
            },
            CXPart::Idempotent(f) => ThetaImage {
                first: ZXElement::e(f, GroupWord::identity()).expect("parts are non-trivial idempotents"),
                second: GroupWord::identity(),
            },
        };
        acc.multiply(&image)
    })
}

/// `(γδ)θ₁ = γθ₁·(γθ₂·δθ₁)` and `(γδ)θ₂ = γθ₂·δθ₂`.
pub fn theta_morphism_check(gamma: &CXWord, delta: &CXWord) -> bool {
    let (g, d, gd) = (theta(gamma), theta(delta), theta(&gamma.multiply(delta)));
    gd.first == g.first.multiply(&d.first.act(&g.second)) && gd.second == g.second.multiply(&d.second)
}

/// Every alternating word of at most `max_parts` parts, with word parts
/// of length 1 to `word_len` over the first `letters` symbols and
/// idempotent parts drawn from the non-trivial idempotent trees of at most
/// `idempotent_edges` edges.
pub fn cx_words(
    letters: usize,
    max_parts: usize,
    word_len: usize,
    idempotent_edges: usize,
    budget: usize,
) -> Result<Vec<CXWord>, Error> {
    let syms: Vec<Sym> = (0..letters as u32).map(Sym).collect();
    let mut words: Vec<Word> = vec![Word::empty()];
    let mut word_parts = Vec::new();
    for _ in 0..word_len {
        words = words.iter().flat_map(|w| syms.iter().map(move |&x| w.concat(&Word(vec![x])))).collect();
        word_parts.extend(words.iter().cloned().map(CXPart::Word));
    }
    let idempotent_parts: Vec<CXPart> = enumerate_trees(&syms, idempotent_edges, TreeClass::Ehresmann, budget)?
        .into_iter()
        .filter(|t| t.is_idempotent() && !t.is_identity())
        .map(CXPart::Idempotent)
        .collect();
    let mut out = vec![CXWord::identity()];
    let mut level: Vec<Vec<CXPart>> = vec![vec![]];
    for _ in 0..max_parts {
        let mut next = Vec::new();
        for seq in &level {
            let choices = match seq.last() {
                None => [&word_parts[..], &idempotent_parts[..]].concat(),
                Some(CXPart::Word(_)) => idempotent_parts.clone(),
                Some(CXPart::Idempotent(_)) => word_parts.clone(),
            };
            for part in choices {
                let mut longer = seq.clone();
                longer.push(part);
                out.push(CXWord { parts: longer.clone() });
                next.push(longer);
            }
        }
        level = next;
    }
    Ok(out)
}

/// Checks the morphism law of θ on all pairs from `universe`, agreement of
/// θ with its part-by-part evaluation, and that `θ(x)⁺` and `θ(x⁺)` differ
/// for every letter `x`.
pub fn check_theta_laws(universe: &[CXWord], letters: usize) -> ConfigReport {
    let mut r = ReportBuilder::new(universe.len());
    let alphabet = Alphabet::standard(letters);
    let images: Vec<ThetaImage> = universe.iter().map(theta).collect();
    for (gamma, image) in universe.iter().zip(&images) {
        r.require("direct-evaluation", theta_direct(gamma) == *image, || json!(gamma.format(&alphabet)));
    }
    for (gamma, g) in universe.iter().zip(&images) {
        for (delta, d) in universe.iter().zip(&images) {
            let gd = theta(&gamma.multiply(delta));
            r.require(
                "morphism-first",
                gd.first == g.first.multiply(&d.first.act(&g.second)),
                || json!({"gamma": gamma.format(&alphabet), "delta": delta.format(&alphabet)}),
            );
            r.require(
                "morphism-second",
                gd.second == g.second.multiply(&d.second),
                || json!({"gamma": gamma.format(&alphabet), "delta": delta.format(&alphabet)}),
            );
        }
    }
    for x in (0..letters as u32).map(Sym) {
        let plus_of_image = theta(&CXWord::word(&Word(vec![x]))).plus();
        let image_of_plus = theta(&CXWord::idempotent(&XTree::generator(x).plus()).expect("idempotent"));
        r.require("plus-discrepancy", plus_of_image.first != image_of_plus.first, || json!(alphabet.name(x)));
    }
    r.note(format!("{} words, {} pairs", universe.len(), universe.len() * universe.len()));
    r.finish()
}
