//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("-" | "+") unary | factor
//! factor := base ("^" ["-"] integer)?
//! base   := integer | identifier | identifier "(" expr ")"
//!         | "D(" identifier ("," identifier)+ ")" | "(" expr ")"
//! ```
//!
//! `u_tx` is shorthand for `D(u,t,x)` when every letter after the
//! underscore names a single-letter independent variable.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::canon::{ArbFnAtom, Atom, Func, JetAtom};
use super::index::{MultiIndex, VarId};
use super::node::{canonicalize, Node};
use super::space::Space;
use super::Expr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected {found}, expected {expected}")]
    Syntax {
        found: String,
        expected: &'static str,
    },
    #[error("undeclared identifier `{0}`")]
    Undeclared(String),
    #[error("`{function}` does not depend on `{var}`")]
    OutsideDeps { function: String, var: String },
    #[error("`{0}` cannot be differentiated")]
    NotDifferentiable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent out of range")]
    ExponentRange,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits parse");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^(),".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(ParseError {
                kind: ParseErrorKind::Syntax {
                    found: format!("`{c}`"),
                    expected: "an expression",
                },
                position: i,
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    space: &'a Space,
}

pub(crate) fn parse(text: &str, space: &Space) -> Result<Expr, ParseError> {
    let node = parse_node(text, space)?;
    canonicalize(&node).map_err(|_| ParseError {
        kind: ParseErrorKind::DivisionByZero,
        position: 0,
    })
}

/// Parses into a structural tree without normalizing.
pub fn parse_node(text: &str, space: &Space) -> Result<Node, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        space,
    };
    let node = p.expr()?;
    p.expect_end()?;
    Ok(node)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            position: self.offset(),
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        self.err(ParseErrorKind::Syntax {
            found: self.peek().describe(),
            expected,
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, expected: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("an operator or end of input"))
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat('+') {
                terms.push(self.term()?);
            } else if self.eat('-') {
                let t = self.term()?;
                terms.push(negate(t));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Node::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut factors = vec![self.unary()?];
        loop {
            if self.eat('*') {
                factors.push(self.unary()?);
            } else if self.eat('/') {
                let f = self.unary()?;
                factors.push(Node::Pow(Box::new(f), -1));
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Node::Product(factors)
        })
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.eat('-') {
            return Ok(negate(self.unary()?));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Node, ParseError> {
        let base = self.base()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let at = self.offset();
            let n = match self.bump() {
                Tok::Int(n) => n,
                _ => {
                    self.pos -= 1;
                    return Err(self.unexpected("an integer exponent"));
                }
            };
            let n: i32 = i32::try_from(n).map_err(|_| ParseError {
                kind: ParseErrorKind::ExponentRange,
                position: at,
            })?;
            return Ok(Node::Pow(Box::new(base), if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Node, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => Ok(Node::Const(BigRational::from_integer(n))),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')', "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::Sym('(') {
                    self.bump();
                    if name == "D" {
                        return self.derivative(at);
                    }
                    let func = Func::from_name(&name).ok_or(ParseError {
                        kind: ParseErrorKind::Undeclared(name.clone()),
                        position: at,
                    })?;
                    let arg = self.expr()?;
                    self.expect(')', "`)`")?;
                    return Ok(Node::Apply(func, Box::new(arg)));
                }
                self.identifier(&name, at).map(Node::Atom)
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("an expression"))
            }
        }
    }

    fn derivative(&mut self, at: usize) -> Result<Node, ParseError> {
        let name_at = self.offset();
        let name = match self.bump() {
            Tok::Ident(n) => n,
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("a variable name"));
            }
        };
        let mut atom = self.identifier(&name, name_at)?;
        let mut any = false;
        while self.eat(',') {
            let var_at = self.offset();
            let var = match self.bump() {
                Tok::Ident(v) => v,
                _ => {
                    self.pos -= 1;
                    return Err(self.unexpected("an independent variable"));
                }
            };
            let v = self.space.var_id(&var).ok_or(ParseError {
                kind: ParseErrorKind::Undeclared(var.clone()),
                position: var_at,
            })?;
            atom = self.differentiate(atom, v, &var, var_at)?;
            any = true;
        }
        if !any {
            return Err(self.unexpected("`,` and a variable"));
        }
        self.expect(')', "`)`")?;
        let _ = at;
        Ok(Node::Atom(atom))
    }

    fn differentiate(
        &self,
        atom: Atom,
        v: VarId,
        var: &str,
        at: usize,
    ) -> Result<Atom, ParseError> {
        match atom {
            Atom::Jet(j) => Ok(Atom::Jet(JetAtom::new(j.dep, j.index.bump(v)))),
            Atom::Fn(f) => {
                if !f.deps.contains(v) {
                    return Err(ParseError {
                        kind: ParseErrorKind::OutsideDeps {
                            function: f.name.to_string(),
                            var: var.to_string(),
                        },
                        position: at,
                    });
                }
                Ok(Atom::Fn(ArbFnAtom::new(
                    f.name.clone(),
                    f.deps,
                    f.index.bump(v),
                )))
            }
            Atom::Var(_) | Atom::Param(_) => Err(ParseError {
                kind: ParseErrorKind::NotDifferentiable(var.to_string()),
                position: at,
            }),
        }
    }

    fn identifier(&self, name: &str, at: usize) -> Result<Atom, ParseError> {
        let s = self.space;
        if let Some(v) = s.var_id(name) {
            return Ok(Atom::Var(v));
        }
        if let Some(q) = s.dep_id(name) {
            return Ok(Atom::Jet(JetAtom::base(q)));
        }
        if s.has_parameter(name) {
            return Ok(Atom::Param(name.into()));
        }
        if let Some(f) = s.function(name) {
            return Ok(Atom::Fn(ArbFnAtom::new(
                f.name.clone(),
                f.deps,
                MultiIndex::empty(),
            )));
        }
        if let Some((head, tail)) = name.split_once('_') {
            if !tail.is_empty() && (s.dep_id(head).is_some() || s.function(head).is_some()) {
                let mut atom = self.identifier(head, at)?;
                for (k, ch) in tail.char_indices() {
                    let var = ch.to_string();
                    let v = s.var_id(&var).ok_or(ParseError {
                        kind: ParseErrorKind::Undeclared(name.to_string()),
                        position: at,
                    })?;
                    atom = self.differentiate(atom, v, &var, at + head.len() + 1 + k)?;
                }
                return Ok(atom);
            }
        }
        Err(ParseError {
            kind: ParseErrorKind::Undeclared(name.to_string()),
            position: at,
        })
    }
}

fn negate(n: Node) -> Node {
    match n {
        Node::Const(c) => Node::Const(-c),
        other => Node::Product(vec![
            Node::Const(BigRational::from_integer((-1).into())),
            other,
        ]),
    }
}
