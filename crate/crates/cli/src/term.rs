//! Terms over generators, `1`, juxtaposition and the postfix operators
//! `^+`, `^*`, `^-1`. Postfix binds tighter than juxtaposition, and
//! juxtaposition associates to the left.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Generator(String),
    Identity,
    Product(Box<Term>, Box<Term>),
    Plus(Box<Term>),
    Star(Box<Term>),
    Inverse(Box<Term>),
}

impl Term {
    pub fn generator(name: &str) -> Term {
        Term::Generator(name.to_string())
    }

    pub fn product(a: Term, b: Term) -> Term {
        Term::Product(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Term) -> Term {
        Term::Plus(Box::new(a))
    }

    pub fn star(a: Term) -> Term {
        Term::Star(Box::new(a))
    }

    pub fn inverse(a: Term) -> Term {
        Term::Inverse(Box::new(a))
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrapped = |t: &Term, f: &mut fmt::Formatter<'_>| match t {
            Term::Product(..) => write!(f, "({t})"),
            _ => write!(f, "{t}"),
        };
        match self {
            Term::Generator(name) => f.write_str(name),
            Term::Identity => f.write_str("1"),
            Term::Product(a, b) => {
                write!(f, "{a} ")?;
                wrapped(b, f)
            }
            Term::Plus(a) => {
                wrapped(a, f)?;
                f.write_str("^+")
            }
            Term::Star(a) => {
                wrapped(a, f)?;
                f.write_str("^*")
            }
            Term::Inverse(a) => {
                wrapped(a, f)?;
                f.write_str("^-1")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("syntax error at offset {position}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Ident(String),
    One,
    Open,
    Close,
    Plus,
    Star,
    Inverse,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("`{name}`"),
            Token::One => "`1`".into(),
            Token::Open => "`(`".into(),
            Token::Close => "`)`".into(),
            Token::Plus => "`^+`".into(),
            Token::Star => "`^*`".into(),
            Token::Inverse => "`^-1`".into(),
            Token::End => "end of input".into(),
        }
    }
}

const STARTS: [&str; 3] = ["generator", "`1`", "`(`"];
const POSTFIX: [&str; 3] = ["`^+`", "`^*`", "`^-1`"];

fn lex(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Token::Open,
            b')' => Token::Close,
            b'1' if !bytes.get(i + 1).is_some_and(u8::is_ascii_alphanumeric) => Token::One,
            b'^' => {
                let rest = &input[i + 1..];
                let (token, len) = if rest.starts_with('+') {
                    (Token::Plus, 1)
                } else if rest.starts_with('*') {
                    (Token::Star, 1)
                } else if rest.starts_with("-1") {
                    (Token::Inverse, 2)
                } else {
                    let found = rest.chars().next().map_or("end of input".into(), |c| format!("`^{c}`"));
                    return Err(ParseError { position: i, expected: POSTFIX.to_vec(), found });
                };
                i += len;
                token
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Token::Ident(input[start..=i].to_string())
            }
            _ => {
                let c = input[i..].chars().next().unwrap();
                return Err(ParseError { position: i, expected: STARTS.to_vec(), found: format!("`{c}`") });
            }
        };
        i += 1;
        out.push((start, token));
    }
    out.push((input.len(), Token::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].1
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let (position, token) = &self.tokens[self.at];
        ParseError { position: *position, expected: expected.to_vec(), found: token.describe() }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.postfix()?;
        while matches!(self.peek(), Token::Ident(_) | Token::One | Token::Open) {
            acc = Term::product(acc, self.postfix()?);
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.primary()?;
        loop {
            acc = match self.peek() {
                Token::Plus => Term::plus(acc),
                Token::Star => Term::star(acc),
                Token::Inverse => Term::inverse(acc),
                _ => return Ok(acc),
            };
            self.at += 1;
        }
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let term = match self.peek().clone() {
            Token::Ident(name) => Term::Generator(name),
            Token::One => Term::Identity,
            Token::Open => {
                self.at += 1;
                let inner = self.term()?;
                if *self.peek() != Token::Close {
                    let mut expected = STARTS.to_vec();
                    expected.extend(POSTFIX);
                    expected.push("`)`");
                    return Err(self.error(&expected));
                }
                inner
            }
            _ => return Err(self.error(&STARTS)),
        };
        self.at += 1;
        Ok(term)
    }
}

pub fn parse(input: &str) -> Result<Term, ParseError> {
    let mut p = Parser { tokens: lex(input)?, at: 0 };
    let term = p.term()?;
    if *p.peek() != Token::End {
        let mut expected = STARTS.to_vec();
        expected.extend(POSTFIX);
        expected.push("end of input");
        return Err(p.error(&expected));
    }
    Ok(term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(name: &str) -> Term {
        Term::generator(name)
    }

    #[test]
    fn examples() {
        assert_eq!(parse("a b^+").unwrap(), Term::product(g("a"), Term::plus(g("b"))));
        assert_eq!(parse("(a b)^*").unwrap(), Term::star(Term::product(g("a"), g("b"))));
        assert_eq!(parse("a ^-1").unwrap(), Term::inverse(g("a")));
        assert_eq!(parse("1").unwrap(), Term::Identity);
        assert_eq!(parse("a b c").unwrap(), Term::product(Term::product(g("a"), g("b")), g("c")));
        assert_eq!(parse("x1 y_2").unwrap(), Term::product(g("x1"), g("y_2")));
        assert_eq!(parse("a^+^*").unwrap(), Term::star(Term::plus(g("a"))));
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let e = parse("a (b").unwrap_err();
        assert_eq!(e.position, 4);
        assert!(e.expected.contains(&"`)`"));
        let e = parse("").unwrap_err();
        assert_eq!((e.position, e.found.as_str()), (0, "end of input"));
        let e = parse("a ^x").unwrap_err();
        assert_eq!(e.position, 2);
        assert_eq!(e.expected, POSTFIX.to_vec());
        let e = parse("a )").unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse("a + b").unwrap_err().to_string().contains("offset 2"));
    }

    #[test]
    fn printing_normalizes_concrete_syntax() {
        assert_eq!(parse("((a)) (b)").unwrap().to_string(), "a b");
        assert_eq!(parse("a (b c)").unwrap().to_string(), "a (b c)");
        assert_eq!(parse("(a b) c").unwrap().to_string(), "a b c");
        assert_eq!(parse("(a b^-1)^+").unwrap().to_string(), "(a b^-1)^+");
    }

    fn terms() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![Just(Term::Identity), "[a-c]".prop_map(Term::Generator)];
        leaf.prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::product(a, b)),
                inner.clone().prop_map(Term::plus),
                inner.clone().prop_map(Term::star),
                inner.prop_map(Term::inverse),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_print(t in terms()) {
            prop_assert_eq!(parse(&t.to_string()).unwrap(), t);
        }
    }
}
