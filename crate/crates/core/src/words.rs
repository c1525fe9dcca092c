//! Letters, free-monoid words and reduced free-group words.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;

/// An interned generator. Ordering follows interning order, which fixes the
/// canonical order used by tree canonicalization.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sym(pub u32);

/// A generator or its formal inverse.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub sym: Sym,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(sym: Sym) -> Letter {
        Letter { sym, inverse: false }
    }

    pub fn neg(sym: Sym) -> Letter {
        Letter { sym, inverse: true }
    }

    pub fn flip(self) -> Letter {
        Letter { sym: self.sym, inverse: !self.inverse }
    }
}

/// The declared generating set X. Names are identifiers; `1` is reserved.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Alphabet, Error> {
        let mut alphabet = Alphabet::default();
        for name in names {
            alphabet.intern(name.as_ref())?;
        }
        Ok(alphabet)
    }

    /// `a`, `b`, `c`, ... for the first `n` symbols.
    pub fn standard(n: usize) -> Alphabet {
        let names = (0..n)
            .map(|i| match u8::try_from(i) {
                Ok(i) if i < 26 => ((b'a' + i) as char).to_string(),
                _ => format!("x{i}"),
            })
            .collect();
        Alphabet { names }
    }

    pub fn intern(&mut self, name: &str) -> Result<Sym, Error> {
        if let Some(sym) = self.sym(name) {
            return Ok(sym);
        }
        if !is_identifier(name) {
            return Err(Error::Syntax { position: 0, message: format!("`{name}` is not a valid generator name") });
        }
        self.names.push(name.to_string());
        Ok(Sym(self.names.len() as u32 - 1))
    }

    pub fn sym(&self, name: &str) -> Option<Sym> {
        self.names.iter().position(|n| n == name).map(|i| Sym(i as u32))
    }

    pub fn name(&self, sym: Sym) -> &str {
        &self.names[sym.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn syms(&self) -> impl Iterator<Item = Sym> + '_ {
        (0..self.names.len() as u32).map(Sym)
    }

    fn lookup(&self, name: &str, position: usize) -> Result<Sym, Error> {
        self.sym(name).ok_or_else(|| Error::Syntax { position, message: format!("unknown generator `{name}`") })
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join(" ")
    }

    pub fn format_group_word(&self, g: &GroupWord) -> String {
        if g.is_empty() {
            return "1".to_string();
        }
        g.0.iter()
            .map(|l| if l.inverse { format!("{}^-1", self.name(l.sym)) } else { self.name(l.sym).to_string() })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `x y^-1 x`; `1` tokens denote the empty word.
    pub fn parse_group_word(&self, text: &str) -> Result<GroupWord, Error> {
        let mut letters = Vec::new();
        for (position, token) in tokens(text) {
            if token == "1" {
                continue;
            }
            match token.strip_suffix("^-1") {
                Some(name) => letters.push(Letter::neg(self.lookup(name, position)?)),
                None => letters.push(Letter::pos(self.lookup(token, position)?)),
            }
        }
        Ok(GroupWord::from_letters(letters))
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, Error> {
        let mut syms = Vec::new();
        for (position, token) in tokens(text) {
            if token != "1" {
                syms.push(self.lookup(token, position)?);
            }
        }
        Ok(Word(syms))
    }
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split_whitespace().map(move |t| (t.as_ptr() as usize - text.as_ptr() as usize, t))
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An element of the free monoid X*.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(pub Vec<Sym>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    pub fn to_group_word(&self) -> GroupWord {
        GroupWord(self.0.iter().map(|&s| Letter::pos(s)).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Alphabet::standard(26).format_word(self))
    }
}

/// A freely reduced word over X ∪ X⁻¹.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> GroupWord {
        GroupWord(Vec::new())
    }

    pub fn generator(sym: Sym) -> GroupWord {
        GroupWord(vec![Letter::pos(sym)])
    }

    /// Reduces eagerly.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> GroupWord {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        GroupWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiply(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        GroupWord(out)
    }

    pub fn invert(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.flip()).collect())
    }

    pub fn power(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.invert() } else { self.clone() };
        (0..k.unsigned_abs()).fold(GroupWord::identity(), |acc, _| acc.multiply(&base))
    }

    /// All prefixes, from 1 up to the word itself.
    pub fn prefixes(&self) -> BTreeSet<GroupWord> {
        (0..=self.0.len()).map(|i| GroupWord(self.0[..i].to_vec())).collect()
    }

    /// The positive word, when every letter is positive.
    pub fn to_word(&self) -> Option<Word> {
        self.0.iter().map(|l| (!l.inverse).then_some(l.sym)).collect::<Option<Vec<_>>>().map(Word)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| !l.inverse)
    }

    /// Drops the last letter; the identity has no parent.
    pub fn parent(&self) -> Option<(GroupWord, Letter)> {
        let (&last, rest) = self.0.split_last()?;
        Some((GroupWord(rest.to_vec()), last))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Alphabet::standard(26).format_group_word(self))
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.flip()) {
        out.pop();
    } else {
        out.push(l);
    }
}

pub fn is_prefix_closed<'a, I: IntoIterator<Item = &'a GroupWord>>(set: I) -> bool {
    let set: BTreeSet<&GroupWord> = set.into_iter().collect();
    set.iter().all(|g| g.parent().is_none_or(|(p, _)| set.contains(&p)))
}
