//! Parser for the sentence DSL:
//!
//! ```text
//! φ    ::= "E" ident ";" φ | φ "&" φ | φ "|" φ | "!" atom | atom | "(" φ ")"
//! atom ::= ident "~" ident | ident "=" ident
//! ```
//!
//! `&` binds tighter than `|`; a quantifier body extends as far right as
//! possible. Identifiers are `[A-Za-z_][A-Za-z0-9_]*`, except the keyword `E`.

use super::ast::{Atom, AtomKind, Formula, Sentence};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("lexical error at byte {pos}: unexpected character {ch:?}")]
    Lexical { pos: usize, ch: char },
    #[error("syntax error at byte {pos}: expected {expected}, found {found}")]
    Syntax { pos: usize, expected: &'static str, found: String },
    #[error("unbound variable {name:?} at byte {pos}")]
    UnboundVariable { name: String, pos: usize },
    #[error("negation of non-atom at byte {pos}")]
    NegationOfNonAtom { pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Lexical { pos, .. }
            | ParseError::Syntax { pos, .. }
            | ParseError::UnboundVariable { pos, .. }
            | ParseError::NegationOfNonAtom { pos } => *pos,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Exists,
    Ident(String),
    Semi,
    And,
    Or,
    Not,
    Tilde,
    Equals,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Exists => "'E'".into(),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Semi => "';'".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Not => "'!'".into(),
            Tok::Tilde => "'~'".into(),
            Tok::Equals => "'='".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        let single = match ch {
            ';' => Some(Tok::Semi),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '!' => Some(Tok::Not),
            '~' => Some(Tok::Tilde),
            '=' => Some(Tok::Equals),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            chars.next();
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut ident = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    ident.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((if ident == "E" { Tok::Exists } else { Tok::Ident(ident) }, pos));
            continue;
        }
        return Err(ParseError::Lexical { pos, ch });
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    scope: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<usize, ParseError> {
        if *self.peek() == want {
            Ok(self.bump().1)
        } else {
            Err(self.syntax(expected))
        }
    }

    fn syntax(&self, expected: &'static str) -> ParseError {
        ParseError::Syntax { pos: self.pos(), expected, found: self.peek().describe() }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.conjunction()?];
        while *self.peek() == Tok::Or {
            self.bump();
            parts.push(self.conjunction()?);
        }
        Ok(Formula::or(parts))
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.unary()?];
        while *self.peek() == Tok::And {
            self.bump();
            parts.push(self.unary()?);
        }
        Ok(Formula::and(parts))
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Exists => {
                self.bump();
                let var = match self.bump() {
                    (Tok::Ident(v), _) => v,
                    (t, pos) => {
                        return Err(ParseError::Syntax { pos, expected: "a variable after 'E'", found: t.describe() })
                    }
                };
                self.expect(Tok::Semi, "';' after the quantified variable")?;
                self.scope.push(var.clone());
                let body = self.formula();
                self.scope.pop();
                Ok(Formula::exists(&var, body?))
            }
            Tok::Not => {
                let (_, pos) = self.bump();
                Ok(Formula::Not(self.negated_atom(pos)?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Tok::Ident(_) => Ok(Formula::Atom(self.atom()?)),
            _ => Err(self.syntax("a formula")),
        }
    }

    /// After `!`: an atom, possibly wrapped in parentheses.
    fn negated_atom(&mut self, bang: usize) -> Result<Atom, ParseError> {
        let save = self.at;
        let mut depth = 0;
        while *self.peek() == Tok::LParen {
            self.bump();
            depth += 1;
        }
        if !matches!(self.peek(), Tok::Ident(_)) {
            self.at = save;
            return Err(ParseError::NegationOfNonAtom { pos: bang });
        }
        let a = self.atom()?;
        for _ in 0..depth {
            if *self.peek() != Tok::RParen {
                return Err(ParseError::NegationOfNonAtom { pos: bang });
            }
            self.bump();
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let left = self.variable()?;
        let kind = match self.bump() {
            (Tok::Tilde, _) => AtomKind::Adj,
            (Tok::Equals, _) => AtomKind::Eq,
            (t, pos) => return Err(ParseError::Syntax { pos, expected: "'~' or '='", found: t.describe() }),
        };
        let right = self.variable()?;
        Ok(Atom { kind, left, right })
    }

    fn variable(&mut self) -> Result<String, ParseError> {
        match self.bump() {
            (Tok::Ident(name), pos) => {
                if self.scope.contains(&name) {
                    Ok(name)
                } else {
                    Err(ParseError::UnboundVariable { name, pos })
                }
            }
            (t, pos) => Err(ParseError::Syntax { pos, expected: "a variable", found: t.describe() }),
        }
    }
}

/// Parses a closed existential sentence.
pub fn parse_sentence(text: &str) -> Result<Sentence, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0, scope: Vec::new() };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.syntax("end of input"));
    }
    Ok(Sentence::new(f).expect("scoping was checked while parsing"))
}
