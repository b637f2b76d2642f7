#![allow(dead_code)]

pub mod criteria;

use noether::expr::{DepId, Expr, MultiIndex, Space, VarId};
use noether::jet::{
    adjoint_derivative_multi, divergence, euler, ibp_phi, noether_r_all, prolong_apply,
    total_derivative, total_derivative_multi, EvolutionaryVectorField,
};
use proptest::prelude::*;

pub const MAX_ORDER: u8 = 3;

/// Raw material for one atom: kind selector, dependent index, counts.
type AtomSeed = (u8, u8, [u8; 3]);
/// Factor: atom, power, wrapper selector.
type FactorSeed = (AtomSeed, i32, u8);
type TermSeed = (i64, Vec<FactorSeed>);

fn multi_index(p: usize, counts: [u8; 3]) -> MultiIndex {
    let mut c = [0u8; 3];
    let mut left = MAX_ORDER;
    for i in 0..p {
        c[i] = counts[i].min(left);
        left -= c[i];
    }
    MultiIndex::from_counts(&c[..p])
}

fn atom(p: usize, m: usize, (kind, dep, counts): AtomSeed) -> Expr {
    if kind % 7 == 6 {
        Expr::var(VarId(dep % p as u8))
    } else {
        Expr::jet(DepId(dep % m as u8), multi_index(p, counts))
    }
}

fn build(p: usize, m: usize, terms: &[TermSeed]) -> Expr {
    let parts: Vec<Expr> = terms
        .iter()
        .map(|(c, factors)| {
            let fs: Vec<Expr> = factors
                .iter()
                .map(|&(a, pow, wrap)| {
                    let base = atom(p, m, a);
                    match wrap % 8 {
                        6 => base.exp(),
                        7 => base.sin(),
                        _ => base.pow(pow),
                    }
                })
                .collect();
            Expr::product(fs.iter()).scale(&noether::expr::int(*c))
        })
        .collect();
    Expr::sum(parts.iter())
}

fn term_seed() -> impl Strategy<Value = TermSeed> {
    let atom = (any::<u8>(), any::<u8>(), [0u8..=3, 0u8..=3, 0u8..=3]);
    (
        -3i64..=3,
        prop::collection::vec((atom, 1i32..=2, any::<u8>()), 1..=3),
    )
}

fn expr_seed() -> impl Strategy<Value = Vec<TermSeed>> {
    prop::collection::vec(term_seed(), 1..=4)
}

/// A random jet space with expressions, a field, fluxes and directions.
#[derive(Clone, Debug)]
pub struct Instance {
    pub p: usize,
    pub m: usize,
    pub f: Expr,
    pub g: Expr,
    pub alpha: EvolutionaryVectorField,
    pub fluxes: Vec<Expr>,
    pub j: MultiIndex,
    pub i: VarId,
    pub k: VarId,
}

impl Instance {
    pub fn space(&self) -> Space {
        let vars = ["t", "x", "y"];
        let deps = ["u", "v"];
        Space::new(
            vars[..self.p].iter().copied(),
            deps[..self.m].iter().copied(),
        )
        .unwrap()
    }
}

pub fn instance() -> impl Strategy<Value = Instance> {
    (1usize..=3, 1usize..=2).prop_flat_map(|(p, m)| {
        (
            expr_seed(),
            expr_seed(),
            prop::collection::vec(expr_seed(), m),
            prop::collection::vec(expr_seed(), p),
            [0u8..=3, 0u8..=3, 0u8..=3],
            0..p,
            0..p,
        )
            .prop_map(move |(f, g, a, k, counts, i, kk)| Instance {
                p,
                m,
                f: build(p, m, &f),
                g: build(p, m, &g),
                alpha: EvolutionaryVectorField::new(a.iter().map(|s| build(p, m, s)).collect()),
                fluxes: k.iter().map(|s| build(p, m, s)).collect(),
                j: multi_index(p, counts),
                i: VarId(i as u8),
                k: VarId(kk as u8),
            })
    })
}

fn zero(what: &str, e: Expr, inst: &Instance) -> Result<(), String> {
    if e.is_zero() {
        Ok(())
    } else {
        Err(format!(
            "{what}: residual {} for {inst:?}",
            inst.space().render(&e)
        ))
    }
}

/// `X_α f = α^q E_q(f) + D_i R^i_α(f)`.
pub fn noether_identity(inst: &Instance) -> Result<(), String> {
    let lhs = prolong_apply(&inst.alpha, &inst.f);
    let mut rhs = divergence(&noether_r_all(&inst.alpha, inst.p, &inst.f));
    for q in 0..inst.m {
        let dq = DepId(q as u8);
        rhs = rhs.add(&inst.alpha.component(dq).mul(&euler(&inst.f, dq)));
    }
    zero("Noether identity", lhs.sub(&rhs), inst)
}

/// `g D_J f = f (-D)_J g + D_i Φ^i_J[f, g]`.
pub fn ibp_identity(inst: &Instance) -> Result<(), String> {
    let lhs = inst.g.mul(&total_derivative_multi(&inst.f, &inst.j));
    let rhs = inst
        .f
        .mul(&adjoint_derivative_multi(&inst.g, &inst.j))
        .add(&divergence(&ibp_phi(&inst.f, &inst.g, &inst.j, inst.p)));
    zero("integration by parts", lhs.sub(&rhs), inst)
}

pub fn euler_kills_divergence(inst: &Instance) -> Result<(), String> {
    let d = divergence(&inst.fluxes);
    for q in 0..inst.m {
        zero("Euler of a divergence", euler(&d, DepId(q as u8)), inst)?;
    }
    Ok(())
}

pub fn total_derivatives_commute(inst: &Instance) -> Result<(), String> {
    let a = total_derivative(&total_derivative(&inst.f, inst.i), inst.k);
    let b = total_derivative(&total_derivative(&inst.f, inst.k), inst.i);
    zero("D_i D_k = D_k D_i", a.sub(&b), inst)
}

pub fn prolongation_commutes(inst: &Instance) -> Result<(), String> {
    let a = prolong_apply(&inst.alpha, &total_derivative(&inst.f, inst.i));
    let b = total_derivative(&prolong_apply(&inst.alpha, &inst.f), inst.i);
    zero("X_α D_i = D_i X_α", a.sub(&b), inst)
}

pub type IdentityCheck = fn(&Instance) -> Result<(), String>;

pub const IDENTITIES: [(&str, IdentityCheck); 5] = [
    ("Noether identity", noether_identity),
    ("integration by parts", ibp_identity),
    (
        "Euler operator annihilates divergences",
        euler_kills_divergence,
    ),
    ("total derivatives commute", total_derivatives_commute),
    ("prolonged fields commute with D_i", prolongation_commutes),
];
