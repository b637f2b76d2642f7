//! Numeric evaluation of canonical expressions over any scalar type that
//! supports the elementary functions.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use super::canon::{Atom, Expr, Factor, Func, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("no value assigned to {0:?}")]
    Missing(Atom),
    #[error("logarithm of non-positive value {0}")]
    LogDomain(f64),
    #[error("division by zero")]
    DivisionByZero,
}

pub trait Scalar: Clone {
    fn from_rational(r: &Rational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn exp(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn ln(&self) -> Result<Self, EvalError>;
    fn recip(&self) -> Result<Self, EvalError>;

    fn powi(&self, n: i32) -> Result<Self, EvalError> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::from_rational(&Rational::from_integer(1.into()));
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn ln(&self) -> Result<Self, EvalError> {
        if *self <= 0.0 {
            Err(EvalError::LogDomain(*self))
        } else {
            Ok(f64::ln(*self))
        }
    }
    fn recip(&self) -> Result<Self, EvalError> {
        if *self == 0.0 {
            Err(EvalError::DivisionByZero)
        } else {
            Ok(1.0 / self)
        }
    }
    fn powi(&self, n: i32) -> Result<Self, EvalError> {
        if n < 0 && *self == 0.0 {
            return Err(EvalError::DivisionByZero);
        }
        Ok(f64::powi(*self, n))
    }
}

pub fn evaluate<T: Scalar>(
    e: &Expr,
    lookup: &mut impl FnMut(&Atom) -> Result<T, EvalError>,
) -> Result<T, EvalError> {
    let mut acc = T::from_rational(&Rational::from_integer(0.into()));
    for t in e.terms() {
        acc = acc.add(&evaluate_term(&t.coeff, t.mono.factors(), lookup)?);
    }
    Ok(acc)
}

/// Values of the individual terms of `e`, in canonical order.
pub fn evaluate_terms<T: Scalar>(
    e: &Expr,
    lookup: &mut impl FnMut(&Atom) -> Result<T, EvalError>,
) -> Result<Vec<T>, EvalError> {
    e.terms()
        .iter()
        .map(|t| evaluate_term(&t.coeff, t.mono.factors(), lookup))
        .collect()
}

fn evaluate_term<T: Scalar>(
    coeff: &Rational,
    factors: &[(Factor, i32)],
    lookup: &mut impl FnMut(&Atom) -> Result<T, EvalError>,
) -> Result<T, EvalError> {
    let mut v = T::from_rational(coeff);
    for (f, n) in factors {
        let base = match f {
            Factor::Atom(a) => lookup(a)?,
            Factor::Apply(func, arg) => {
                let x = evaluate(arg, lookup)?;
                match func {
                    Func::Exp => x.exp(),
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Ln => x.ln()?,
                }
            }
            Factor::Group(arg) => evaluate(arg, lookup)?,
        };
        v = v.mul(&base.powi(*n)?);
    }
    Ok(v)
}

/// IEEE double evaluation with every atom taken from `assignment`.
pub fn evaluate_numeric(e: &Expr, assignment: &HashMap<Atom, f64>) -> Result<f64, EvalError> {
    evaluate(e, &mut |a: &Atom| {
        assignment
            .get(a)
            .copied()
            .ok_or_else(|| EvalError::Missing(a.clone()))
    })
}
