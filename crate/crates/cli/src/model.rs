//! Evaluation of terms in the supported models.

use std::fmt;
use std::str::FromStr;

use ehrmon_core::coherence::EhresmannContext;
use ehrmon_core::expansions::{munn_to_mm, MMElement, MargolisMeakin, QSet, Qn, QnElement, Sz};
use ehrmon_core::psdp::{FreeGroup, Integers};
use ehrmon_core::scheiblich::FreeInverse;
use ehrmon_core::xtree::FreeEhresmann;
use ehrmon_core::{Alphabet, BaseMonoid, Group, GroupWord, Letter, MunnElement, PSetElement, Sdp, XTree};

use crate::term::Term;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupBase {
    /// ℤ, generated by `x`.
    Integers,
    /// The free group on the generators named in the terms.
    Free,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelSpec {
    Fad,
    Flad,
    Fi,
    Fa,
    Fla,
    Mm,
    Sdp(GroupBase),
    Sz(GroupBase),
    /// Q_n(ℤ).
    Qn(usize),
}

impl FromStr for ModelSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<ModelSpec, String> {
        let base = |b: &str| match b {
            "Z" | "z" | "int" => Ok(GroupBase::Integers),
            "free" | "F" => Ok(GroupBase::Free),
            _ => Err(format!("unknown group base `{b}` (expected Z or free)")),
        };
        Ok(match s.split_once(':') {
            None => match s {
                "fad" => ModelSpec::Fad,
                "flad" => ModelSpec::Flad,
                "fi" => ModelSpec::Fi,
                "fa" => ModelSpec::Fa,
                "fla" => ModelSpec::Fla,
                "mm" => ModelSpec::Mm,
                "sdp" => ModelSpec::Sdp(GroupBase::Integers),
                "sz" => ModelSpec::Sz(GroupBase::Integers),
                _ => return Err(format!("unknown model `{s}`")),
            },
            Some(("sdp", b)) => ModelSpec::Sdp(base(b)?),
            Some(("sz", b)) => ModelSpec::Sz(base(b)?),
            Some(("qn", n)) => match n.parse::<usize>() {
                Ok(n) if n >= 1 => ModelSpec::Qn(n),
                _ => return Err(format!("qn needs a positive threshold, got `{n}`")),
            },
            _ => return Err(format!("unknown model `{s}`")),
        })
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = |b: &GroupBase| match b {
            GroupBase::Integers => "Z",
            GroupBase::Free => "free",
        };
        match self {
            ModelSpec::Fad => f.write_str("fad"),
            ModelSpec::Flad => f.write_str("flad"),
            ModelSpec::Fi => f.write_str("fi"),
            ModelSpec::Fa => f.write_str("fa"),
            ModelSpec::Fla => f.write_str("fla"),
            ModelSpec::Mm => f.write_str("mm"),
            ModelSpec::Sdp(b) => write!(f, "sdp:{}", base(b)),
            ModelSpec::Sz(b) => write!(f, "sz:{}", base(b)),
            ModelSpec::Qn(n) => write!(f, "qn:{n}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum EvalError {
    #[error("unknown generator `{name}` in model {model}")]
    UnknownGenerator { name: String, model: String },
    #[error("{op} unsupported in model {model}")]
    Unsupported { op: &'static str, model: String },
    #[error("{0}")]
    Core(#[from] ehrmon_core::Error),
}

pub type Elem<M> = <<M as TermModel>::Ctx as BaseMonoid>::Elem;

/// A model in which terms can be evaluated. Generators are interned into
/// the model's alphabet on first use.
pub trait TermModel {
    type Ctx: EhresmannContext;

    fn spec(&self) -> ModelSpec;
    fn ctx(&self) -> &Self::Ctx;
    fn atom(&mut self, name: &str) -> Result<Elem<Self>, EvalError>;
    fn inverse(&self, a: &Elem<Self>) -> Option<Elem<Self>>;

    fn has_star(&self) -> bool {
        true
    }

    fn text(&self, a: &Elem<Self>) -> String {
        self.ctx().elem_to_json(a).to_string()
    }

    fn dot(&self, _a: &Elem<Self>) -> Option<String> {
        None
    }
}

pub fn eval<M: TermModel>(m: &mut M, t: &Term) -> Result<Elem<M>, EvalError> {
    let unsupported = |op, m: &M| EvalError::Unsupported { op, model: m.spec().to_string() };
    Ok(match t {
        Term::Generator(name) => m.atom(name)?,
        Term::Identity => m.ctx().identity(),
        Term::Product(a, b) => {
            let a = eval(m, a)?;
            let b = eval(m, b)?;
            m.ctx().multiply(&a, &b)
        }
        Term::Plus(a) => {
            let a = eval(m, a)?;
            m.ctx().plus(&a)
        }
        Term::Star(a) => {
            if !m.has_star() {
                return Err(unsupported("star", m));
            }
            let a = eval(m, a)?;
            m.ctx().star(&a)
        }
        Term::Inverse(a) => {
            let a = eval(m, a)?;
            m.inverse(&a).ok_or_else(|| unsupported("inverse", m))?
        }
    })
}

pub struct TreeModel {
    pub ctx: FreeEhresmann,
    pub left: bool,
}

impl TreeModel {
    pub fn new(left: bool) -> TreeModel {
        TreeModel { ctx: FreeEhresmann { alphabet: Alphabet::default() }, left }
    }
}

impl TermModel for TreeModel {
    type Ctx = FreeEhresmann;

    fn spec(&self) -> ModelSpec {
        if self.left {
            ModelSpec::Flad
        } else {
            ModelSpec::Fad
        }
    }

    fn ctx(&self) -> &FreeEhresmann {
        &self.ctx
    }

    fn atom(&mut self, name: &str) -> Result<XTree, EvalError> {
        Ok(XTree::generator(self.ctx.alphabet.intern(name)?))
    }

    fn inverse(&self, _a: &XTree) -> Option<XTree> {
        None
    }

    fn has_star(&self) -> bool {
        !self.left
    }

    fn text(&self, a: &XTree) -> String {
        a.to_term(&self.ctx.alphabet)
    }

    fn dot(&self, a: &XTree) -> Option<String> {
        Some(ehrmon_core::xtree::to_dot(a.raw(), &self.ctx.alphabet))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MunnKind {
    Inverse,
    Ample,
    LeftAmple,
}

pub struct MunnModel {
    pub ctx: FreeInverse,
    pub kind: MunnKind,
}

impl MunnModel {
    pub fn new(kind: MunnKind) -> MunnModel {
        MunnModel { ctx: FreeInverse { alphabet: Alphabet::default() }, kind }
    }
}

fn format_set(items: impl Iterator<Item = String>, point: String) -> String {
    format!("{{{}}} @ {point}", items.collect::<Vec<_>>().join(", "))
}

impl TermModel for MunnModel {
    type Ctx = FreeInverse;

    fn spec(&self) -> ModelSpec {
        match self.kind {
            MunnKind::Inverse => ModelSpec::Fi,
            MunnKind::Ample => ModelSpec::Fa,
            MunnKind::LeftAmple => ModelSpec::Fla,
        }
    }

    fn ctx(&self) -> &FreeInverse {
        &self.ctx
    }

    fn atom(&mut self, name: &str) -> Result<MunnElement, EvalError> {
        Ok(MunnElement::generator(Letter::pos(self.ctx.alphabet.intern(name)?)))
    }

    fn inverse(&self, a: &MunnElement) -> Option<MunnElement> {
        (self.kind == MunnKind::Inverse).then(|| a.inverse())
    }

    fn has_star(&self) -> bool {
        self.kind != MunnKind::LeftAmple
    }

    fn text(&self, a: &MunnElement) -> String {
        let f = |g: &GroupWord| self.ctx.alphabet.format_group_word(g);
        format_set(a.set().iter().map(f), f(a.point()))
    }

    fn dot(&self, a: &MunnElement) -> Option<String> {
        Some(munn_to_mm(a).graph().to_dot(&self.ctx.alphabet))
    }
}

pub struct MmModel {
    pub ctx: MargolisMeakin,
}

impl TermModel for MmModel {
    type Ctx = MargolisMeakin;

    fn spec(&self) -> ModelSpec {
        ModelSpec::Mm
    }

    fn ctx(&self) -> &MargolisMeakin {
        &self.ctx
    }

    fn atom(&mut self, name: &str) -> Result<MMElement, EvalError> {
        Ok(MMElement::generator(Letter::pos(self.ctx.alphabet.intern(name)?)))
    }

    fn inverse(&self, a: &MMElement) -> Option<MMElement> {
        Some(a.inverse())
    }

    fn dot(&self, a: &MMElement) -> Option<String> {
        Some(a.graph().to_dot(&self.ctx.alphabet))
    }
}

/// A group base whose generators can be named in terms.
pub trait NamedGroup: Group {
    fn generator(&mut self, name: &str) -> Result<Self::Elem, EvalError>;
    fn show(&self, a: &Self::Elem) -> String;
}

impl NamedGroup for Integers {
    fn generator(&mut self, name: &str) -> Result<i64, EvalError> {
        match name {
            "x" => Ok(1),
            _ => Err(EvalError::UnknownGenerator { name: name.into(), model: "Z (generator x)".into() }),
        }
    }

    fn show(&self, a: &i64) -> String {
        a.to_string()
    }
}

impl NamedGroup for FreeGroup {
    fn generator(&mut self, name: &str) -> Result<GroupWord, EvalError> {
        Ok(GroupWord::generator(self.alphabet.intern(name)?))
    }

    fn show(&self, a: &GroupWord) -> String {
        self.alphabet.format_group_word(a)
    }
}

/// S(G) over a group; a generator `g` denotes `({1, g}, g)`.
pub struct SdpModel<B> {
    pub ctx: Sdp<B>,
    pub base: GroupBase,
}

impl<B: NamedGroup> TermModel for SdpModel<B> {
    type Ctx = Sdp<B>;

    fn spec(&self) -> ModelSpec {
        ModelSpec::Sdp(self.base)
    }

    fn ctx(&self) -> &Sdp<B> {
        &self.ctx
    }

    fn atom(&mut self, name: &str) -> Result<PSetElement<B::Elem>, EvalError> {
        let g = self.ctx.base.generator(name)?;
        Ok(PSetElement::new([self.ctx.base.identity(), g.clone()], g))
    }

    fn inverse(&self, a: &PSetElement<B::Elem>) -> Option<PSetElement<B::Elem>> {
        Some(self.ctx.inverse(a))
    }

    fn text(&self, a: &PSetElement<B::Elem>) -> String {
        format_set(a.set.iter().map(|e| self.ctx.base.show(e)), self.ctx.base.show(&a.point))
    }
}

/// Sz(G); a generator `g` denotes `({1, g}, g)`.
pub struct SzModel<B> {
    pub ctx: Sz<B>,
    pub base: GroupBase,
}

impl<B: NamedGroup> TermModel for SzModel<B> {
    type Ctx = Sz<B>;

    fn spec(&self) -> ModelSpec {
        ModelSpec::Sz(self.base)
    }

    fn ctx(&self) -> &Sz<B> {
        &self.ctx
    }

    fn atom(&mut self, name: &str) -> Result<PSetElement<B::Elem>, EvalError> {
        let g = self.ctx.sdp.base.generator(name)?;
        Ok(self.ctx.element([self.ctx.sdp.base.identity(), g.clone()], g)?)
    }

    fn inverse(&self, a: &PSetElement<B::Elem>) -> Option<PSetElement<B::Elem>> {
        Some(self.ctx.inverse(a))
    }

    fn text(&self, a: &PSetElement<B::Elem>) -> String {
        let base = &self.ctx.sdp.base;
        format_set(a.set.iter().map(|e| base.show(e)), base.show(&a.point))
    }
}

/// Q_n(ℤ); the generator `x` denotes the image of `({0, 1}, 1)`.
pub struct QnModel {
    pub ctx: Qn<Integers>,
}

impl TermModel for QnModel {
    type Ctx = Qn<Integers>;

    fn spec(&self) -> ModelSpec {
        ModelSpec::Qn(self.ctx.n)
    }

    fn ctx(&self) -> &Qn<Integers> {
        &self.ctx
    }

    fn atom(&mut self, name: &str) -> Result<QnElement<i64>, EvalError> {
        let g = Integers.generator(name)?;
        Ok(self.ctx.project(&PSetElement::new([0, g], g)))
    }

    fn inverse(&self, a: &QnElement<i64>) -> Option<QnElement<i64>> {
        Some(self.ctx.inverse(a))
    }

    fn text(&self, a: &QnElement<i64>) -> String {
        match &a.set {
            QSet::Finite(s) => format_set(s.iter().map(i64::to_string), a.point.to_string()),
            QSet::Top => format!("top @ {}", a.point),
        }
    }
}

/// Runs `$body` with `$m` bound to a fresh model for `$spec`.
#[macro_export]
macro_rules! with_model {
    ($spec:expr, $m:ident => $body:expr) => {{
        use $crate::model::*;
        match $spec {
            ModelSpec::Fad => {
                let mut $m = TreeModel::new(false);
                $body
            }
            ModelSpec::Flad => {
                let mut $m = TreeModel::new(true);
                $body
            }
            ModelSpec::Fi => {
                let mut $m = MunnModel::new(MunnKind::Inverse);
                $body
            }
            ModelSpec::Fa => {
                let mut $m = MunnModel::new(MunnKind::Ample);
                $body
            }
            ModelSpec::Fla => {
                let mut $m = MunnModel::new(MunnKind::LeftAmple);
                $body
            }
            ModelSpec::Mm => {
                let mut $m = MmModel { ctx: ehrmon_core::expansions::MargolisMeakin { alphabet: Default::default() } };
                $body
            }
            ModelSpec::Sdp(GroupBase::Integers) => {
                let mut $m =
                    SdpModel { ctx: ehrmon_core::Sdp::new(ehrmon_core::psdp::Integers), base: GroupBase::Integers };
                $body
            }
            ModelSpec::Sdp(GroupBase::Free) => {
                let base = ehrmon_core::psdp::FreeGroup { alphabet: Default::default() };
                let mut $m = SdpModel { ctx: ehrmon_core::Sdp::new(base), base: GroupBase::Free };
                $body
            }
            ModelSpec::Sz(GroupBase::Integers) => {
                let ctx = ehrmon_core::expansions::Sz::new(ehrmon_core::psdp::Integers);
                let mut $m = SzModel { ctx, base: GroupBase::Integers };
                $body
            }
            ModelSpec::Sz(GroupBase::Free) => {
                let base = ehrmon_core::psdp::FreeGroup { alphabet: Default::default() };
                let mut $m = SzModel { ctx: ehrmon_core::expansions::Sz::new(base), base: GroupBase::Free };
                $body
            }
            ModelSpec::Qn(n) => {
                let mut $m = QnModel { ctx: ehrmon_core::expansions::Qn::new(ehrmon_core::psdp::Integers, n) };
                $body
            }
        }
    }};
}
