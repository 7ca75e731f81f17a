//! Expression syntax for elements of `B`.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := RATIONAL | wedge | '[' expr ',' expr ']' | '(' expr ')'
//! wedge  := atom ('^' atom)*
//! atom   := IDENT | IDENT '\''
//! ```
//!
//! `'` marks a dual generator, `*` and `^` are both the wedge product and
//! `[ , ]` is the big bracket. Whitespace is ignored.

use std::sync::Arc;

use crate::bracket::big_bracket;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::parse_scalar;
use crate::space::{GeneratorRef, GradedSpace};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            let end = bytes.get(i).map_or(src.len(), |b| b.0);
            out.push((pos, Tok::Num(src[bytes[start].0..end].to_string())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].1.is_ascii_alphanumeric() || bytes[i].1 == '_') {
                i += 1;
            }
            let end = bytes.get(i).map_or(src.len(), |b| b.0);
            out.push((pos, Tok::Ident(src[bytes[start].0..end].to_string())));
        } else if "+-*^/[](),'".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    space: &'a Arc<GradedSpace>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Element> {
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.wedge(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                let pos = self.pos();
                self.at += 1;
                let text = if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.at += 1;
                            format!("{n}/{d}")
                        }
                        _ => return self.error("expected a denominator"),
                    }
                } else {
                    n
                };
                let c = parse_scalar(&text).map_err(|e| match e {
                    Error::ZeroDenominator(_) => e,
                    other => Error::Syntax { pos, msg: other.to_string() },
                })?;
                Ok(Element::scalar(self.space, c))
            }
            Some(Tok::Ident(_)) => self.wedge(),
            Some(Tok::Sym('[')) => {
                self.at += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                big_bracket(&a, &b)
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let a = self.expr()?;
                self.expect(')')?;
                Ok(a)
            }
            Some(_) => self.error("expected a number, generator, `[` or `(`"),
            None => self.error("unexpected end of input"),
        }
    }

    fn wedge(&mut self) -> Result<Element> {
        let mut word = vec![self.atom()?];
        while self.eat('^') {
            word.push(self.atom()?);
        }
        Element::canonicalize(self.space, &word, crate::scalar::int(1))
    }

    fn atom(&mut self) -> Result<GeneratorRef> {
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return self.error("expected a generator name");
        };
        self.at += 1;
        let index = self.space.index_of(&name)?;
        Ok(if self.eat('\'') { GeneratorRef::dual(index) } else { GeneratorRef::primal(index) })
    }
}

/// Parses and evaluates `src` over `space`.
pub fn parse_expr(src: &str, space: &Arc<GradedSpace>) -> Result<Element> {
    let mut p = Parser { toks: tokenize(src)?, at: 0, end: src.len(), space };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}
