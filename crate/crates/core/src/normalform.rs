//! Normal forms `t₀e₁t₁⋯e_m t_m` for FLAd(X): interior words non-empty and
//! each `e_i` strictly below `(t_i e_{i+1} ⋯ e_m t_m)⁺`.

use std::fmt::Write as _;

use crate::error::Error;
use crate::words::{Alphabet, Word};
use crate::xtree::XTree;

/// A letter of the alphabet X* ∪ E over which normal forms are written.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BXLetter {
    Word(Word),
    Idempotent(XTree),
}

impl BXLetter {
    /// Accepts non-identity left-Ehresmann idempotents only.
    pub fn idempotent(e: XTree) -> Result<BXLetter, Error> {
        if !e.is_idempotent() || !e.is_left_ehresmann() || e.is_identity() {
            return Err(Error::InvalidElement("expected a non-trivial left-Ehresmann idempotent".into()));
        }
        Ok(BXLetter::Idempotent(e))
    }

    pub fn to_tree(&self) -> XTree {
        match self {
            BXLetter::Word(w) => XTree::from_word(w),
            BXLetter::Idempotent(e) => e.clone(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalForm {
    words: Vec<Word>,
    idempotents: Vec<XTree>,
}

impl NormalForm {
    /// No validation; see [`NormalForm::check_normal_conditions`].
    pub fn from_parts(words: Vec<Word>, idempotents: Vec<XTree>) -> NormalForm {
        NormalForm { words, idempotents }
    }

    /// The normal form of a left-Ehresmann tree, read off its trunk factors.
    pub fn of_tree(t: &XTree) -> NormalForm {
        let factors = t.trunk_factors();
        let mut letters = vec![BXLetter::Idempotent(factors[0].clone())];
        for (x, e) in t.trunk().0.iter().zip(&factors[1..]) {
            letters.push(BXLetter::Word(Word(vec![*x])));
            letters.push(BXLetter::Idempotent(e.clone()));
        }
        normalize(&letters)
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn idempotents(&self) -> &[XTree] {
        &self.idempotents
    }

    /// The number m of idempotent factors.
    pub fn m(&self) -> usize {
        self.idempotents.len()
    }

    pub fn letters(&self) -> Vec<BXLetter> {
        let mut out = vec![BXLetter::Word(self.words[0].clone())];
        for (e, t) in self.idempotents.iter().zip(&self.words[1..]) {
            out.push(BXLetter::Idempotent(e.clone()));
            out.push(BXLetter::Word(t.clone()));
        }
        out
    }

    pub fn eval_to_tree(&self) -> XTree {
        self.letters().iter().fold(XTree::identity(), |acc, l| acc.multiply(&l.to_tree()))
    }

    pub fn check_normal_conditions(&self) -> bool {
        let m = self.idempotents.len();
        if self.words.len() != m + 1 {
            return false;
        }
        if m >= 1 && self.words[1..m].iter().any(Word::is_empty) {
            return false;
        }
        let mut suffix = XTree::from_word(&self.words[m]);
        for i in (0..m).rev() {
            let e = &self.idempotents[i];
            if BXLetter::idempotent(e.clone()).is_err() {
                return false;
            }
            let bound = suffix.plus();
            if e.multiply(&bound) != *e || *e == bound {
                return false;
            }
            suffix = XTree::from_word(&self.words[i]).multiply(e).multiply(&suffix);
        }
        true
    }

    /// `t0 [e:<term>] t1 ...`, with `1` for empty words.
    pub fn format_text(&self, alphabet: &Alphabet) -> String {
        self.format(alphabet, " ", |e| format!("[e:{}]", e.to_term(alphabet)))
    }

    /// `t0 · e1 · t1 · ...`.
    pub fn format_pretty(&self, alphabet: &Alphabet) -> String {
        self.format(alphabet, " · ", |e| e.to_term(alphabet))
    }

    fn format(&self, alphabet: &Alphabet, sep: &str, idem: impl Fn(&XTree) -> String) -> String {
        let mut out = alphabet.format_word(&self.words[0]);
        for (e, t) in self.idempotents.iter().zip(&self.words[1..]) {
            let _ = write!(out, "{sep}{}{sep}{}", idem(e), alphabet.format_word(t));
        }
        out
    }
}

/// Rewrites a letter sequence into the normal form of its product.
pub fn normalize(letters: &[BXLetter]) -> NormalForm {
    // Steps (0) and (I): drop identities, merge neighbours of the same kind.
    let mut words = vec![Word::empty()];
    let mut idempotents: Vec<XTree> = Vec::new();
    let mut last_was_word = true;
    for letter in letters {
        match letter {
            BXLetter::Word(w) if w.is_empty() => {}
            BXLetter::Idempotent(e) if e.is_identity() => {}
            BXLetter::Word(w) => {
                let last = words.last_mut().unwrap();
                *last = last.concat(w);
                last_was_word = true;
            }
            BXLetter::Idempotent(e) => {
                if last_was_word {
                    idempotents.push(e.clone());
                    words.push(Word::empty());
                } else {
                    let last = idempotents.last_mut().unwrap();
                    *last = last.multiply(e);
                }
                last_was_word = false;
            }
        }
    }
    // Step (II), right to left: drop f when f ≥ b⁺, else replace f by f·b⁺,
    // where b is the value of everything to the right of f.
    let mut suffix = XTree::from_word(words.last().unwrap());
    let mut i = idempotents.len();
    while i > 0 {
        i -= 1;
        let bound = suffix.plus();
        let f = idempotents[i].multiply(&bound);
        let head = XTree::from_word(&words[i]);
        if f == bound {
            idempotents.remove(i);
            let tail = words.remove(i + 1);
            words[i] = words[i].concat(&tail);
            suffix = head.multiply(&suffix);
        } else {
            suffix = head.multiply(&f).multiply(&suffix);
            idempotents[i] = f;
        }
    }
    NormalForm { words, idempotents }
}
