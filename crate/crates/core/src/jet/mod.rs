//! Total derivatives, Euler operators, evolutionary vector fields, the
//! Noether operator `R^i` and integration by parts on jet space.

use std::collections::HashMap;

use crate::expr::{int, ArbFnAtom, Atom, DepId, Expr, JetAtom, MultiIndex, VarId};

mod homotopy;

pub use homotopy::{divergence_reconstruct, ReconstructError};

/// `D_i e`.
pub fn total_derivative(e: &Expr, i: VarId) -> Expr {
    e.derive_with(&mut |a: &Atom| match a {
        Atom::Var(v) if *v == i => Expr::one(),
        Atom::Jet(j) => Expr::jet(j.dep, j.index.bump(i)),
        Atom::Fn(f) if f.deps.contains(i) => {
            Expr::arbfn(ArbFnAtom::new(f.name.clone(), f.deps, f.index.bump(i)))
        }
        _ => Expr::zero(),
    })
}

/// `D_J e`.
pub fn total_derivative_multi(e: &Expr, j: &MultiIndex) -> Expr {
    let mut out = e.clone();
    for v in j.sequence() {
        if out.is_zero() {
            break;
        }
        out = total_derivative(&out, v);
    }
    out
}

/// `(-D)_J e = (-1)^{|J|} D_J e`.
pub fn adjoint_derivative_multi(e: &Expr, j: &MultiIndex) -> Expr {
    let d = total_derivative_multi(e, j);
    if j.order() % 2 == 1 {
        d.neg()
    } else {
        d
    }
}

/// Memoized total derivatives `D_J e` of one fixed expression.
#[derive(Clone, Debug)]
pub struct Derivatives {
    cache: HashMap<MultiIndex, Expr>,
}

impl Derivatives {
    pub fn new(e: Expr) -> Self {
        let mut cache = HashMap::new();
        cache.insert(MultiIndex::empty(), e);
        Derivatives { cache }
    }

    pub fn base(&self) -> &Expr {
        &self.cache[&MultiIndex::empty()]
    }

    pub fn get(&mut self, j: &MultiIndex) -> Expr {
        if let Some(e) = self.cache.get(j) {
            return e.clone();
        }
        // Peel off the last variable so that shared prefixes are reused.
        let last = j.sequence().pop().expect("empty index is always cached");
        let lower = j.lower(last).unwrap();
        let prev = self.get(&lower);
        let d = total_derivative(&prev, last);
        self.cache.insert(j.clone(), d.clone());
        d
    }
}

fn jet_atoms_of(e: &Expr, q: DepId) -> Vec<JetAtom> {
    e.jet_atoms().into_iter().filter(|j| j.dep == q).collect()
}

/// Euler operator `E_{u^q} e = Σ_J (-D)_J ∂e/∂u^q_J`.
pub fn euler(e: &Expr, q: DepId) -> Expr {
    let terms: Vec<Expr> = jet_atoms_of(e, q)
        .into_iter()
        .map(|j| {
            let p = e.atom_derivative(&Atom::Jet(j.clone()));
            adjoint_derivative_multi(&p, &j.index)
        })
        .collect();
    Expr::sum(terms.iter())
}

/// Euler operator with respect to an arbitrary function `name`.
pub fn euler_arbfn(e: &Expr, name: &str) -> Expr {
    let terms: Vec<Expr> = e
        .arbfn_atoms(name)
        .into_iter()
        .map(|f| {
            let p = e.atom_derivative(&Atom::Fn(f.clone()));
            adjoint_derivative_multi(&p, &f.index)
        })
        .collect();
    Expr::sum(terms.iter())
}

/// `Σ_i D_i flux^i`, with flux `i` paired to the `i`-th independent variable.
pub fn divergence(fluxes: &[Expr]) -> Expr {
    let parts: Vec<Expr> = fluxes
        .iter()
        .enumerate()
        .map(|(i, k)| total_derivative(k, VarId(i as u8)))
        .collect();
    Expr::sum(parts.iter())
}

/// Vertical vector field with characteristic `α^q`, one component per
/// dependent variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionaryVectorField {
    pub components: Vec<Expr>,
}

impl EvolutionaryVectorField {
    pub fn new(components: Vec<Expr>) -> Self {
        EvolutionaryVectorField { components }
    }

    pub fn zero(m: usize) -> Self {
        EvolutionaryVectorField {
            components: vec![Expr::zero(); m],
        }
    }

    pub fn component(&self, q: DepId) -> &Expr {
        &self.components[q.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Expr::is_zero)
    }

    fn derivatives(&self) -> Vec<Derivatives> {
        self.components
            .iter()
            .cloned()
            .map(Derivatives::new)
            .collect()
    }
}

/// `X_α e = Σ (D_J α^q) ∂e/∂u^q_J`.
pub fn prolong_apply(alpha: &EvolutionaryVectorField, e: &Expr) -> Expr {
    let mut ds = alpha.derivatives();
    e.derive_with(&mut |a: &Atom| match a {
        Atom::Jet(j) => ds[j.dep.index()].get(&j.index),
        _ => Expr::zero(),
    })
}

/// Noether operator `R^i_α e`, using the ascending ordering of each
/// multi-index:
/// `Σ_{q,J} Σ_{m: j_m = i} (-1)^{k+m} (D_{j_1..j_{m-1}} α^q) D_{j_{m+1}..j_k} ∂e/∂u^q_J`.
pub fn noether_r_apply(alpha: &EvolutionaryVectorField, i: VarId, e: &Expr) -> Expr {
    let mut ds = alpha.derivatives();
    let mut parts = Vec::new();
    for j in e.jet_atoms() {
        if j.index.count(i) == 0 {
            continue;
        }
        let seq = j.index.sequence();
        let k = seq.len();
        let mut p = Derivatives::new(e.atom_derivative(&Atom::Jet(j.clone())));
        for m in 1..=k {
            if seq[m - 1] != i {
                continue;
            }
            let head = MultiIndex::from_vars(seq[..m - 1].iter().copied());
            let tail = MultiIndex::from_vars(seq[m..].iter().copied());
            let a = ds[j.dep.index()].get(&head);
            if a.is_zero() {
                continue;
            }
            let term = a.mul(&p.get(&tail));
            parts.push(if (k + m) % 2 == 1 { term.neg() } else { term });
        }
    }
    Expr::sum(parts.iter())
}

/// All `R^i_α e` for `i < p`.
pub fn noether_r_all(alpha: &EvolutionaryVectorField, p: usize, e: &Expr) -> Vec<Expr> {
    (0..p)
        .map(|i| noether_r_apply(alpha, VarId(i as u8), e))
        .collect()
}

/// Fluxes `Φ^i_J[f, g]` with `g D_J f = f (-D)_J g + Σ_i D_i Φ^i_J[f, g]`.
pub fn ibp_phi(f: &Expr, g: &Expr, j: &MultiIndex, p: usize) -> Vec<Expr> {
    let mut out = vec![Expr::zero(); p];
    if j.is_empty() {
        return out;
    }
    let mut fd = Derivatives::new(f.clone());
    let mut gd = Derivatives::new(g.clone());
    for (i, slot) in out.iter_mut().enumerate() {
        let vi = VarId(i as u8);
        let ji = j.count(vi);
        if ji == 0 {
            continue;
        }
        // D_{i+1}^{J_{i+1}} ... D_p^{J_p} and D_1^{J_1} ... D_{i-1}^{J_{i-1}}.
        let mut after = MultiIndex::empty();
        let mut before = MultiIndex::empty();
        for (v, c) in j.iter() {
            for _ in 0..c {
                if v.index() > i {
                    after = after.bump(v);
                } else if v.index() < i {
                    before = before.bump(v);
                }
            }
        }
        let mut parts = Vec::new();
        for jj in 0..ji {
            let mut fi = after.clone();
            for _ in 0..(ji - 1 - jj) {
                fi = fi.bump(vi);
            }
            let mut gi = before.clone();
            for _ in 0..jj {
                gi = gi.bump(vi);
            }
            let gterm = gd.get(&gi);
            if gterm.is_zero() {
                continue;
            }
            let term = fd.get(&fi).mul(&gterm);
            parts.push(if gi.order() % 2 == 1 {
                term.neg()
            } else {
                term
            });
        }
        *slot = Expr::sum(parts.iter());
    }
    out
}

/// `Σ_{K ≤ J} C(J,K) D_{J-K} a · D_K b`, the Leibniz expansion of `D_J(a b)`,
/// returned as `(K, coefficient of D_K b)` pairs.
pub fn leibniz_coefficients(a: &Expr, j: &MultiIndex) -> Vec<(MultiIndex, Expr)> {
    let mut ad = Derivatives::new(a.clone());
    j.sub_indices()
        .into_iter()
        .filter_map(|k| {
            let rest = j.checked_sub(&k).unwrap();
            let c = ad.get(&rest);
            if c.is_zero() {
                None
            } else {
                Some((k.clone(), c.scale(&int(j.binomial(&k) as i64))))
            }
        })
        .collect()
}
