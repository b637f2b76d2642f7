use std::fmt::Write;

use num_traits::{One, Signed};

use super::canon::{Atom, Expr, Factor, JetAtom, Monomial, Rational};
use super::index::MultiIndex;
use super::space::Space;

pub(crate) fn render(e: &Expr, space: &Space) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, t) in e.terms().iter().enumerate() {
        let neg = t.coeff.is_negative();
        let mag = t.coeff.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        render_term(&mut out, &mag, &t.mono, space);
    }
    out
}

fn render_term(out: &mut String, mag: &Rational, mono: &Monomial, space: &Space) {
    if mono.is_one() {
        write!(out, "{mag}").unwrap();
        return;
    }
    if !mag.is_one() {
        write!(out, "{mag}*").unwrap();
    }
    for (k, (f, e)) in mono.factors().iter().enumerate() {
        if k > 0 {
            out.push('*');
        }
        render_factor(out, f, space);
        if *e != 1 {
            write!(out, "^{e}").unwrap();
        }
    }
}

fn render_factor(out: &mut String, f: &Factor, space: &Space) {
    match f {
        Factor::Atom(a) => render_atom(out, a, space),
        Factor::Apply(func, arg) => {
            write!(out, "{}({})", func.name(), render(arg, space)).unwrap();
        }
        Factor::Group(arg) => {
            write!(out, "({})", render(arg, space)).unwrap();
        }
    }
}

fn render_derivative(out: &mut String, name: &str, index: &MultiIndex, space: &Space) {
    if index.is_empty() {
        out.push_str(name);
        return;
    }
    out.push_str("D(");
    out.push_str(name);
    for v in index.sequence() {
        out.push(',');
        out.push_str(space.var_name(v));
    }
    out.push(')');
}

fn render_atom(out: &mut String, a: &Atom, space: &Space) {
    match a {
        Atom::Var(v) => out.push_str(space.var_name(*v)),
        Atom::Jet(j) => render_derivative(out, space.dep_name(j.dep), &j.index, space),
        Atom::Fn(f) => render_derivative(out, &f.name, &f.index, space),
        Atom::Param(p) => out.push_str(p),
    }
}

pub(crate) fn render_jet(j: &JetAtom, space: &Space) -> String {
    let mut s = String::new();
    render_derivative(&mut s, space.dep_name(j.dep), &j.index, space);
    s
}
