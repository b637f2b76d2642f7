//! Structural (non-canonical) expression trees.

use super::canon::{Atom, Expr, Factor, Func, Rational};

/// An expression tree as written, before normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Const(Rational),
    Atom(Atom),
    Sum(Vec<Node>),
    Product(Vec<Node>),
    Pow(Box<Node>, i32),
    Apply(Func, Box<Node>),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("division by zero")]
pub struct DivisionByZero;

/// Brings a tree into canonical form.
pub fn canonicalize(node: &Node) -> Result<Expr, DivisionByZero> {
    Ok(match node {
        Node::Const(c) => Expr::constant(c.clone()),
        Node::Atom(a) => Expr::atom(a.clone()),
        Node::Sum(items) => {
            let parts = items
                .iter()
                .map(canonicalize)
                .collect::<Result<Vec<_>, _>>()?;
            Expr::sum(parts.iter())
        }
        Node::Product(items) => {
            let mut acc = Expr::one();
            for item in items {
                acc = acc.mul(&canonicalize(item)?);
            }
            acc
        }
        Node::Pow(base, n) => canonicalize(base)?.checked_pow(*n).ok_or(DivisionByZero)?,
        Node::Apply(f, arg) => Expr::apply(*f, canonicalize(arg)?),
    })
}

impl Expr {
    /// The canonical form viewed as a tree of sums, products and powers.
    pub fn to_node(&self) -> Node {
        let terms = self
            .terms()
            .iter()
            .map(|t| {
                let mut factors = vec![Node::Const(t.coeff.clone())];
                for (f, e) in t.mono.factors() {
                    let base = match f {
                        Factor::Atom(a) => Node::Atom(a.clone()),
                        Factor::Apply(func, arg) => Node::Apply(*func, Box::new(arg.to_node())),
                        Factor::Group(arg) => arg.to_node(),
                    };
                    factors.push(if *e == 1 {
                        base
                    } else {
                        Node::Pow(Box::new(base), *e)
                    });
                }
                Node::Product(factors)
            })
            .collect();
        Node::Sum(terms)
    }
}
