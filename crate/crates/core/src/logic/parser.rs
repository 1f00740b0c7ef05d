//! Recursive-descent parser. Precedence from tightest: `!`, `&`, `|`, `->`
//! (right-associative), `<->`. Fully parenthesised input, which is what
//! `Display` produces, always parses back to the same tree.

use super::{is_atom_name, Atoms, Formula, LogicError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, LogicError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' if text[i..].starts_with("->") => {
                i += 1;
                Tok::Implies
            }
            '<' if text[i..].starts_with("<->") => {
                i += 2;
                Tok::Iff
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                while i + 1 < bytes.len()
                    && ((bytes[i + 1] as char).is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            other => {
                return Err(LogicError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    atoms: &'a Atoms,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, msg: impl Into<String>) -> LogicError {
        LogicError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn iff(&mut self) -> Result<Formula, LogicError> {
        let mut left = self.implication()?;
        while self.eat(&Tok::Iff) {
            let right = self.implication()?;
            left = Formula::biconditional(left, right);
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula, LogicError> {
        let left = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let right = self.implication()?;
            return Ok(Formula::implication(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, LogicError> {
        let mut left = self.conjunction()?;
        while self.eat(&Tok::Or) {
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, LogicError> {
        let mut left = self.unary()?;
        while self.eat(&Tok::And) {
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, LogicError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match name.as_str() {
                    "T" => Ok(Formula::True),
                    "F" => Ok(Formula::False),
                    _ if !is_atom_name(&name) => Err(LogicError::Syntax {
                        pos,
                        msg: format!("`{name}` is not an atom name"),
                    }),
                    _ if self.atoms.index_of(&name).is_none() => {
                        Err(LogicError::UndeclaredAtom { name, pos })
                    }
                    _ => Ok(Formula::Atom(name)),
                }
            }
            Some(tok) => Err(self.error(format!("unexpected token {tok:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses `text` against the declared `atoms`.
pub fn parse_formula(text: &str, atoms: &Atoms) -> Result<Formula, LogicError> {
    let mut parser = Parser {
        toks: tokenize(text)?,
        at: 0,
        end: text.len(),
        atoms,
    };
    let f = parser.iff()?;
    if parser.at != parser.toks.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(f)
}
