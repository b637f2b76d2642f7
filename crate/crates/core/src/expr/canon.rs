//! Canonical sum-of-monomials representation.
//!
//! Every [`Expr`] is kept in canonical form at all times: a sorted list of
//! terms with distinct monomials and nonzero exact rational coefficients.
//! Products of sums are distributed, all exponential factors of a monomial
//! are merged into a single `exp`, and a sum is only kept unexpanded when it
//! is raised to a negative power.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::index::{DepId, MultiIndex, VarId, VarSet};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// A jet coordinate `u^q_J`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetAtom {
    pub dep: DepId,
    pub index: MultiIndex,
}

impl JetAtom {
    pub fn new(dep: DepId, index: MultiIndex) -> Self {
        JetAtom { dep, index }
    }

    pub fn base(dep: DepId) -> Self {
        JetAtom {
            dep,
            index: MultiIndex::empty(),
        }
    }

    pub fn order(&self) -> usize {
        self.index.order()
    }
}

/// A derivative `D_J f` of an arbitrary function of a subset of the
/// independent variables. `index` only ever involves variables in `deps`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArbFnAtom {
    pub name: Arc<str>,
    pub deps: VarSet,
    pub index: MultiIndex,
}

impl ArbFnAtom {
    pub fn new(name: impl Into<Arc<str>>, deps: VarSet, index: MultiIndex) -> Self {
        let atom = ArbFnAtom {
            name: name.into(),
            deps,
            index,
        };
        debug_assert!(atom.index.support().is_subset(deps));
        atom
    }
}

/// Indivisible symbols of the expression language.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Var(VarId),
    Jet(JetAtom),
    Fn(ArbFnAtom),
    Param(Arc<str>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "ln" | "log" => Func::Ln,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            _ => return None,
        })
    }
}

/// One multiplicative factor of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Atom(Atom),
    Apply(Func, Expr),
    /// A sum with at least two terms, normalized to leading coefficient one.
    /// Only ever carries a negative exponent.
    Group(Expr),
}

impl Factor {
    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            Factor::Atom(a) => Some(a),
            _ => None,
        }
    }
}

/// Product of factors with nonzero integer exponents, sorted by factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Factor, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Factor, i32)] {
        &self.0
    }

    fn from_sorted(factors: Vec<(Factor, i32)>) -> Self {
        let mut m = Monomial(factors);
        m.merge_exponentials();
        m
    }

    pub fn single(factor: Factor, exp: i32) -> Self {
        Monomial::from_sorted(vec![(factor, exp)])
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial::from_sorted(out)
    }

    /// `self^n`, folding exponentials into their arguments.
    pub fn powi(&self, n: i32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial::from_sorted(self.0.iter().map(|(f, e)| (f.clone(), e * n)).collect())
    }

    /// This monomial with the exponent of `factor` changed by `delta`.
    pub fn with_exponent_shift(&self, idx: usize, delta: i32) -> Monomial {
        let mut out = self.0.clone();
        out[idx].1 += delta;
        if out[idx].1 == 0 {
            out.remove(idx);
        }
        Monomial(out)
    }

    /// `exp(a)^m * exp(b)^n -> exp(m a + n b)`; drops `exp(0)`.
    fn merge_exponentials(&mut self) {
        let is_exp = |f: &Factor| matches!(f, Factor::Apply(Func::Exp, _));
        let count = self.0.iter().filter(|(f, _)| is_exp(f)).count();
        if count == 0 || (count == 1 && self.0.iter().any(|(f, e)| is_exp(f) && *e == 1)) {
            return;
        }
        let mut arg = Expr::zero();
        self.0.retain(|(f, e)| {
            if let Factor::Apply(Func::Exp, a) = f {
                arg = &arg + &a.scale(&int(*e as i64));
                false
            } else {
                true
            }
        });
        if !arg.is_zero() {
            let f = Factor::Apply(Func::Exp, arg);
            let pos = self
                .0
                .binary_search_by(|(g, _)| g.cmp(&f))
                .unwrap_or_else(|p| p);
            self.0.insert(pos, (f, 1));
        }
    }

    /// Total degree in factors matching `pred`, or `None` when such a factor
    /// hides inside a function application or a negative power.
    pub(crate) fn degree_in(&self, pred: &impl Fn(&Atom) -> bool) -> Option<i32> {
        let mut d = 0;
        for (f, e) in &self.0 {
            match f {
                Factor::Atom(a) if pred(a) => {
                    if *e < 0 {
                        return None;
                    }
                    d += e;
                }
                Factor::Atom(_) => {}
                Factor::Apply(_, arg) | Factor::Group(arg) => {
                    if arg.any_atom(pred) {
                        return None;
                    }
                }
            }
        }
        Some(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: Rational,
}

/// Canonical symbolic expression. Cheap to clone; immutable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Expr(Arc<Vec<Term>>);

impl Default for Expr {
    fn default() -> Self {
        Expr::zero()
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, t) in self.terms().iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", t.coeff)?;
            for (fac, e) in t.mono.factors() {
                write!(f, "*{:?}^{}", fac, e)?;
            }
        }
        Ok(())
    }
}

impl Expr {
    pub fn zero() -> Self {
        Expr(Arc::new(Vec::new()))
    }

    pub fn one() -> Self {
        Expr::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Expr::term(Monomial::one(), c)
    }

    pub fn integer(n: i64) -> Self {
        Expr::constant(int(n))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Expr::constant(rat(n, d))
    }

    pub fn term(mono: Monomial, coeff: Rational) -> Self {
        if coeff.is_zero() {
            Expr::zero()
        } else {
            Expr(Arc::new(vec![Term { mono, coeff }]))
        }
    }

    pub fn atom(a: Atom) -> Self {
        Expr::term(Monomial::single(Factor::Atom(a), 1), Rational::one())
    }

    pub fn var(v: VarId) -> Self {
        Expr::atom(Atom::Var(v))
    }

    pub fn jet(dep: DepId, index: MultiIndex) -> Self {
        Expr::atom(Atom::Jet(JetAtom::new(dep, index)))
    }

    pub fn arbfn(a: ArbFnAtom) -> Self {
        Expr::atom(Atom::Fn(a))
    }

    pub fn param(name: impl Into<Arc<str>>) -> Self {
        Expr::atom(Atom::Param(name.into()))
    }

    pub(crate) fn from_factor(f: Factor) -> Self {
        Expr::term(Monomial::single(f, 1), Rational::one())
    }

    /// Collects unsorted terms into canonical form.
    pub(crate) fn from_terms(mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| a.mono.cmp(&b.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff += t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Expr(Arc::new(out))
    }

    pub fn terms(&self) -> &[Term] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms() {
            [] => Some(Rational::zero()),
            [t] if t.mono.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self.terms() {
            [t] if t.coeff.is_one() => match t.mono.factors() {
                [(Factor::Atom(a), 1)] => Some(a),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Expr(Arc::new(
            self.terms()
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    coeff: &t.coeff * c,
                })
                .collect(),
        ))
    }

    pub fn add(&self, other: &Expr) -> Expr {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = (self.terms(), other.terms());
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].mono.cmp(&b[j].mono) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].coeff + &b[j].coeff;
                    if !c.is_zero() {
                        out.push(Term {
                            mono: a[i].mono.clone(),
                            coeff: c,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Expr(Arc::new(out))
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        if self.is_zero() || other.is_zero() {
            return Expr::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for a in self.terms() {
            for b in other.terms() {
                terms.push(Term {
                    mono: a.mono.mul(&b.mono),
                    coeff: &a.coeff * &b.coeff,
                });
            }
        }
        Expr::from_terms(terms)
    }

    pub fn neg(&self) -> Expr {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.neg())
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Expr>) -> Expr {
        let mut terms = Vec::new();
        for e in items {
            terms.extend(e.terms().iter().cloned());
        }
        Expr::from_terms(terms)
    }

    pub fn product<'a>(items: impl IntoIterator<Item = &'a Expr>) -> Expr {
        items.into_iter().fold(Expr::one(), |acc, e| acc.mul(e))
    }

    /// Integer power. Returns `None` for a negative power of zero.
    pub fn checked_pow(&self, n: i32) -> Option<Expr> {
        if n == 0 {
            return Some(Expr::one());
        }
        if n > 0 {
            let mut base = self.clone();
            let mut acc = Expr::one();
            let mut k = n;
            while k > 0 {
                if k & 1 == 1 {
                    acc = acc.mul(&base);
                }
                k >>= 1;
                if k > 0 {
                    base = base.mul(&base);
                }
            }
            return Some(acc);
        }
        match self.terms() {
            [] => None,
            [t] => {
                let c = rational_pow(&t.coeff, n);
                Some(Expr::term(t.mono.powi(n), c))
            }
            terms => {
                let lead = terms[0].coeff.clone();
                let normalized = self.scale(&lead.recip());
                let c = rational_pow(&lead, n);
                Some(Expr::term(
                    Monomial::single(Factor::Group(normalized), n),
                    c,
                ))
            }
        }
    }

    pub fn pow(&self, n: i32) -> Expr {
        self.checked_pow(n).expect("negative power of zero")
    }

    pub fn checked_div(&self, other: &Expr) -> Option<Expr> {
        Some(self.mul(&other.checked_pow(-1)?))
    }

    pub fn apply(func: Func, arg: Expr) -> Expr {
        match func {
            Func::Exp => {
                if arg.is_zero() {
                    return Expr::one();
                }
                Expr::from_factor(Factor::Apply(Func::Exp, arg))
            }
            Func::Ln => {
                if arg.is_one() {
                    return Expr::zero();
                }
                if let [t] = arg.terms() {
                    if t.coeff.is_one() {
                        if let [(Factor::Apply(Func::Exp, inner), 1)] = t.mono.factors() {
                            return inner.clone();
                        }
                    }
                }
                Expr::from_factor(Factor::Apply(Func::Ln, arg))
            }
            Func::Sin => {
                if arg.is_zero() {
                    return Expr::zero();
                }
                if arg.leading_negative() {
                    return Expr::from_factor(Factor::Apply(Func::Sin, arg.neg())).neg();
                }
                Expr::from_factor(Factor::Apply(Func::Sin, arg))
            }
            Func::Cos => {
                if arg.is_zero() {
                    return Expr::one();
                }
                let arg = if arg.leading_negative() {
                    arg.neg()
                } else {
                    arg
                };
                Expr::from_factor(Factor::Apply(Func::Cos, arg))
            }
        }
    }

    pub fn exp(&self) -> Expr {
        Expr::apply(Func::Exp, self.clone())
    }

    pub fn ln(&self) -> Expr {
        Expr::apply(Func::Ln, self.clone())
    }

    pub fn sin(&self) -> Expr {
        Expr::apply(Func::Sin, self.clone())
    }

    pub fn cos(&self) -> Expr {
        Expr::apply(Func::Cos, self.clone())
    }

    fn leading_negative(&self) -> bool {
        self.terms().first().is_some_and(|t| t.coeff.is_negative())
    }

    /// Whether any atom satisfying `pred` occurs, including inside function
    /// arguments and negative powers of sums.
    pub fn any_atom(&self, pred: &impl Fn(&Atom) -> bool) -> bool {
        self.terms().iter().any(|t| {
            t.mono.factors().iter().any(|(f, _)| match f {
                Factor::Atom(a) => pred(a),
                Factor::Apply(_, arg) | Factor::Group(arg) => arg.any_atom(pred),
            })
        })
    }

    /// All atoms occurring anywhere in the expression.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        for t in self.terms() {
            for (f, _) in t.mono.factors() {
                match f {
                    Factor::Atom(a) => {
                        if !out.contains(a) {
                            out.insert(a.clone());
                        }
                    }
                    Factor::Apply(_, arg) | Factor::Group(arg) => arg.collect_atoms(out),
                }
            }
        }
    }

    pub fn jet_atoms(&self) -> BTreeSet<JetAtom> {
        self.atoms()
            .into_iter()
            .filter_map(|a| match a {
                Atom::Jet(j) => Some(j),
                _ => None,
            })
            .collect()
    }

    pub fn arbfn_atoms(&self, name: &str) -> BTreeSet<ArbFnAtom> {
        self.atoms()
            .into_iter()
            .filter_map(|a| match a {
                Atom::Fn(f) if &*f.name == name => Some(f),
                _ => None,
            })
            .collect()
    }

    /// Highest derivative order of any jet atom, or `None` if there are none.
    pub fn jet_order(&self) -> Option<usize> {
        self.jet_atoms().iter().map(|j| j.order()).max()
    }

    /// Simultaneous substitution of atoms; unmapped atoms are kept.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> Option<Expr>) -> Expr {
        let mut out: Vec<Expr> = Vec::new();
        let mut kept: Vec<Term> = Vec::new();
        for t in self.terms() {
            let mut mapped: Vec<(usize, Expr)> = Vec::new();
            for (k, (fac, _)) in t.mono.factors().iter().enumerate() {
                let image = match fac {
                    Factor::Atom(a) => f(a),
                    Factor::Apply(func, arg) => {
                        let new_arg = arg.map_atoms(f);
                        (new_arg != *arg).then(|| Expr::apply(*func, new_arg))
                    }
                    Factor::Group(arg) => {
                        let new_arg = arg.map_atoms(f);
                        (new_arg != *arg).then_some(new_arg)
                    }
                };
                if let Some(e) = image {
                    mapped.push((k, e));
                }
            }
            if mapped.is_empty() {
                kept.push(t.clone());
                continue;
            }
            let factors = t.mono.factors();
            let mut rest = Vec::new();
            let mut mi = 0;
            for (k, fe) in factors.iter().enumerate() {
                if mi < mapped.len() && mapped[mi].0 == k {
                    mi += 1;
                } else {
                    rest.push(fe.clone());
                }
            }
            let mut acc = Expr::term(Monomial::from_sorted(rest), t.coeff.clone());
            for (k, image) in mapped {
                let e = factors[k].1;
                let p = image
                    .checked_pow(e)
                    .expect("substitution produced a negative power of zero");
                acc = acc.mul(&p);
            }
            out.push(acc);
        }
        out.push(Expr(Arc::new(kept)));
        Expr::sum(out.iter())
    }

    pub fn substitute(&self, target: &Atom, replacement: &Expr) -> Expr {
        self.map_atoms(&mut |a| (a == target).then(|| replacement.clone()))
    }

    /// Applies a derivation determined by its values on atoms; function
    /// applications and negative powers of sums follow the chain rule.
    pub fn derive_with(&self, image: &mut impl FnMut(&Atom) -> Expr) -> Expr {
        let mut terms: Vec<Term> = Vec::new();
        for t in self.terms() {
            for (k, (fac, e)) in t.mono.factors().iter().enumerate() {
                let d = match fac {
                    Factor::Atom(a) => image(a),
                    Factor::Apply(func, arg) => {
                        let da = arg.derive_with(image);
                        if da.is_zero() {
                            continue;
                        }
                        let outer = match func {
                            Func::Exp => Expr::from_factor(fac.clone()),
                            Func::Sin => arg.cos(),
                            Func::Cos => arg.sin().neg(),
                            Func::Ln => arg.pow(-1),
                        };
                        outer.mul(&da)
                    }
                    Factor::Group(arg) => arg.derive_with(image),
                };
                if d.is_zero() {
                    continue;
                }
                let rest = t.mono.with_exponent_shift(k, -1);
                let c = &t.coeff * int(*e as i64);
                for dt in d.terms() {
                    terms.push(Term {
                        mono: rest.mul(&dt.mono),
                        coeff: &c * &dt.coeff,
                    });
                }
            }
        }
        Expr::from_terms(terms)
    }

    /// Formal partial derivative with respect to one atom.
    pub fn atom_derivative(&self, target: &Atom) -> Expr {
        self.derive_with(&mut |a| {
            if a == target {
                Expr::one()
            } else {
                Expr::zero()
            }
        })
    }

    /// Splits a polynomial dependence on `target`: entry `k` is the
    /// coefficient of `target^k`. `None` when `target` occurs inside a
    /// function argument, a negative power, or with a negative exponent.
    pub fn coefficients_in(&self, target: &Atom) -> Option<Vec<Expr>> {
        let mut buckets: Vec<Vec<Term>> = Vec::new();
        let pred = |a: &Atom| a == target;
        for t in self.terms() {
            let d = t.mono.degree_in(&pred)? as usize;
            let mono = match t
                .mono
                .factors()
                .iter()
                .position(|(f, _)| f.as_atom() == Some(target))
            {
                Some(k) => t.mono.with_exponent_shift(k, -(d as i32)),
                None => t.mono.clone(),
            };
            if buckets.len() <= d {
                buckets.resize_with(d + 1, Vec::new);
            }
            buckets[d].push(Term {
                mono,
                coeff: t.coeff.clone(),
            });
        }
        Some(buckets.into_iter().map(Expr::from_terms).collect())
    }

    /// Splits an expression that is linear and homogeneous in the atoms
    /// selected by `pred`: returns the coefficient of each selected atom plus
    /// the part free of them. `None` if some term is nonlinear in them.
    pub fn linear_coefficients(
        &self,
        pred: &impl Fn(&Atom) -> bool,
    ) -> Option<(Vec<(Atom, Expr)>, Expr)> {
        let mut buckets: std::collections::BTreeMap<Atom, Vec<Term>> = Default::default();
        let mut free = Vec::new();
        for t in self.terms() {
            match t.mono.degree_in(pred)? {
                0 => free.push(t.clone()),
                1 => {
                    let k = t
                        .mono
                        .factors()
                        .iter()
                        .position(|(f, _)| f.as_atom().is_some_and(pred))
                        .expect("degree one implies a matching factor");
                    let atom = t.mono.factors()[k].0.as_atom().unwrap().clone();
                    buckets.entry(atom).or_default().push(Term {
                        mono: t.mono.with_exponent_shift(k, -1),
                        coeff: t.coeff.clone(),
                    });
                }
                _ => return None,
            }
        }
        Some((
            buckets
                .into_iter()
                .map(|(a, ts)| (a, Expr::from_terms(ts)))
                .collect(),
            Expr::from_terms(free),
        ))
    }

    /// Whether the expression is a polynomial in jet atoms whose
    /// coefficients are free of jet atoms.
    pub fn is_jet_polynomial(&self) -> bool {
        let is_jet = |a: &Atom| matches!(a, Atom::Jet(_));
        self.terms()
            .iter()
            .all(|t| t.mono.degree_in(&is_jet).is_some())
    }
}

fn rational_pow(c: &Rational, n: i32) -> Rational {
    let base = if n < 0 { c.recip() } else { c.clone() };
    num_traits::pow(base, n.unsigned_abs() as usize)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                Expr::$inner(self, rhs)
            }
        }
        impl std::ops::$trait<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$inner(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                Expr::$inner(&self, rhs)
            }
        }
        impl std::ops::$trait<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$inner(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::integer(n)
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        let v: Vec<Expr> = iter.collect();
        Expr::sum(v.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(counts: &[u8]) -> Expr {
        Expr::jet(DepId(0), MultiIndex::from_counts(counts))
    }

    #[test]
    fn like_terms_merge() {
        let ux = u(&[0, 1]);
        let uu = u(&[]);
        assert_eq!(&ux * &uu + &uu * &ux, (&uu * &ux).scale(&int(2)));
    }

    #[test]
    fn binomial_expansion() {
        let uu = u(&[]);
        let lhs = (&uu + Expr::one()).pow(2);
        let rhs = uu.pow(2) + uu.scale(&int(2)) + Expr::one();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn annihilator_and_cancellation() {
        let uu = u(&[]);
        assert!((uu.sin() * Expr::zero()).is_zero());
        assert!((Expr::zero() + &uu - &uu).is_zero());
    }

    #[test]
    fn exponentials_merge() {
        let uu = u(&[]);
        let e = uu.exp() * uu.neg().exp();
        assert!(e.is_one());
        assert_eq!(uu.exp().pow(2), uu.scale(&int(2)).exp());
        assert!(Expr::zero().exp().is_one());
    }

    #[test]
    fn odd_even_trig_normalization() {
        let uu = u(&[]);
        assert_eq!(uu.neg().sin(), uu.sin().neg());
        assert_eq!(uu.neg().cos(), uu.cos());
    }

    #[test]
    fn negative_powers() {
        let uu = u(&[]);
        assert!((uu.pow(-1) * &uu).is_one());
        let g = (&uu + Expr::one()).scale(&int(2)).pow(-1);
        let h = (&uu + Expr::one()).pow(-1).scale(&rat(1, 2));
        assert_eq!(g, h);
        assert!(Expr::zero().checked_pow(-1).is_none());
    }

    #[test]
    fn atom_derivatives() {
        let ux = u(&[0, 1]);
        let uu = u(&[]);
        let target = ux.as_atom().unwrap().clone();
        let e = ux.pow(2) * &uu;
        assert_eq!(e.atom_derivative(&target), (&ux * &uu).scale(&int(2)));
        let base = uu.as_atom().unwrap().clone();
        assert_eq!(uu.exp().atom_derivative(&base), uu.exp());
        assert!(u(&[1]).atom_derivative(&target).is_zero());
    }

    #[test]
    fn substitution() {
        let ux = u(&[0, 1]);
        let uu = u(&[]);
        let a = ux.as_atom().unwrap().clone();
        assert_eq!(
            ux.pow(2).substitute(&a, &Expr::integer(3)),
            Expr::integer(9)
        );
        let b = uu.as_atom().unwrap().clone();
        assert!(uu.exp().substitute(&b, &Expr::zero()).is_one());
    }

    #[test]
    fn polynomial_coefficients() {
        let ux = u(&[0, 1]);
        let uu = u(&[]);
        let a = ux.as_atom().unwrap().clone();
        let e = ux.pow(2) * &uu + &ux + Expr::integer(4);
        let cs = e.coefficients_in(&a).unwrap();
        assert_eq!(cs, vec![Expr::integer(4), Expr::one(), uu.clone()]);
        assert!(ux.exp().coefficients_in(&a).is_none());
    }
}
