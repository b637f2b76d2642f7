use std::collections::BTreeMap;
use std::sync::Arc;

use crate::expr::{ArbFnAtom, Atom, Expr, MultiIndex, VarId, VarSet};
use crate::jet::{adjoint_derivative_multi, ibp_phi, total_derivative};

use super::first::law_from_combination;
use super::reduce::on_shell_reduce;
use super::{
    ConservationLaw, DeltaCombination, DifferentialIdentity, DifferentialSystem, EngineError,
};

type Arrays = BTreeMap<MultiIndex, Expr>;

fn function_decl(sys: &DifferentialSystem, name: &str) -> Result<VarSet, EngineError> {
    sys.space()
        .function(name)
        .map(|f| f.deps)
        .ok_or_else(|| EngineError::UnknownFunction(name.to_string()))
}

/// Splits `e = Σ_J e^J D_J f + rest`.
fn split_on_function(e: &Expr, name: &str) -> Result<(Arrays, Expr), EngineError> {
    let pred = |a: &Atom| matches!(a, Atom::Fn(g) if &*g.name == name);
    let (pairs, free) = e
        .linear_coefficients(&pred)
        .ok_or_else(|| EngineError::NotLinearInFunction(name.to_string()))?;
    let arrays = pairs
        .into_iter()
        .map(|(a, c)| match a {
            Atom::Fn(g) => (g.index, c),
            _ => unreachable!(),
        })
        .collect();
    Ok((arrays, free))
}

/// `Σ_{a,J} (-D)_J [ξ^{aJ} Δ_a]` with the equations symbolic.
fn adjoint_combination(sys: &DifferentialSystem, xi: &[Arrays]) -> DeltaCombination {
    let mut parts = Vec::new();
    for (a, arrays) in xi.iter().enumerate() {
        let delta = sys.placeholder(a, &MultiIndex::empty());
        for (j, c) in arrays {
            parts.push(adjoint_derivative_multi(&c.mul(&delta), j));
        }
    }
    DeltaCombination::new(Expr::sum(parts.iter()))
}

/// `Σ_{a,J} Φ^i_J[f, ξ^{aJ} Δ_a]` with the equations symbolic.
fn residual_fluxes(sys: &DifferentialSystem, f: &Expr, xi: &[Arrays]) -> Vec<DeltaCombination> {
    let p = sys.space().p();
    let mut parts = vec![Vec::new(); p];
    for (a, arrays) in xi.iter().enumerate() {
        let delta = sys.placeholder(a, &MultiIndex::empty());
        for (j, c) in arrays {
            for (i, phi) in ibp_phi(f, &c.mul(&delta), j, p).into_iter().enumerate() {
                parts[i].push(phi);
            }
        }
    }
    parts
        .iter()
        .map(|ps| DeltaCombination::new(Expr::sum(ps.iter())))
        .collect()
}

fn characteristic_arrays(
    cl: &ConservationLaw,
    name: &str,
) -> Result<(Vec<Arrays>, Vec<Expr>), EngineError> {
    let mut arrays = Vec::new();
    let mut free = Vec::new();
    for x in &cl.characteristic {
        let (a, f) = split_on_function(x, name)?;
        arrays.push(a);
        free.push(f);
    }
    Ok((arrays, free))
}

/// Identity `Σ (-D)_J[ξ^{aJ}_f Δ_a] = 0` for an arbitrary function `f` of
/// all independent variables.
pub fn identity_for_function(
    cl: &ConservationLaw,
    sys: &DifferentialSystem,
    name: &str,
) -> Result<DifferentialIdentity, EngineError> {
    let deps = function_decl(sys, name)?;
    if deps.len() != sys.space().p() {
        return Err(EngineError::FunctionScope(name.to_string()));
    }
    let (xi, _) = characteristic_arrays(cl, name)?;
    let identity = DifferentialIdentity::new(
        sys,
        adjoint_combination(sys, &xi),
        format!("Euler operator with respect to {name} applied to the conservation law"),
    );
    if !identity.holds() {
        return Err(EngineError::IdentityFails {
            function: name.to_string(),
            residue: identity.expr,
        });
    }
    Ok(identity)
}

/// One identity per arbitrary function of the law.
pub fn second_theorem_identity(
    cl: &ConservationLaw,
    sys: &DifferentialSystem,
) -> Result<Vec<DifferentialIdentity>, EngineError> {
    if cl.functions.is_empty() {
        return Err(EngineError::NoArbitraryFunction);
    }
    cl.functions
        .iter()
        .map(|f| identity_for_function(cl, sys, f))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triviality {
    Trivial,
    Nontrivial,
}

#[derive(Clone, Debug)]
pub struct TrivialityReport {
    pub classification: Triviality,
    pub identities: Vec<DifferentialIdentity>,
    /// `Σ Φ^i_J[f, ξ^{aJ} Δ_a]`, one combination per independent variable.
    pub residual_fluxes: Vec<DeltaCombination>,
    /// Vanishes on-shell.
    pub kind1: Vec<Expr>,
    /// The rest of the fluxes; divergence-free whenever the characteristic
    /// is carried entirely by arbitrary functions.
    pub kind2: Vec<Expr>,
    /// On-shell reduction of the part of the characteristic free of
    /// arbitrary functions.
    pub reduced_characteristic: Vec<Expr>,
}

/// Splits a law carrying arbitrary functions of all variables into fluxes
/// vanishing on-shell and identically divergence-free fluxes. A law
/// without arbitrary functions is trivial iff its characteristic vanishes
/// on-shell.
///
/// For an under-determined system the characteristic is defined only up to
/// the characteristic of a differential identity, so a nonzero reduced
/// characteristic there does not by itself rule out triviality.
pub fn triviality_classify(
    cl: &ConservationLaw,
    sys: &DifferentialSystem,
) -> Result<TrivialityReport, EngineError> {
    let p = sys.space().p();
    let mut identities = Vec::new();
    let mut residual: Vec<Expr> = vec![Expr::zero(); p];
    for name in &cl.functions {
        identities.push(identity_for_function(cl, sys, name)?);
        let deps = function_decl(sys, name)?;
        let (xi, _) = characteristic_arrays(cl, name)?;
        let f = Expr::arbfn(ArbFnAtom::new(Arc::clone(name), deps, MultiIndex::empty()));
        for (slot, phi) in residual.iter_mut().zip(residual_fluxes(sys, &f, &xi)) {
            *slot = slot.add(phi.expr());
        }
    }
    let is_function = |a: &Atom| matches!(a, Atom::Fn(g) if cl.functions.contains(&g.name));
    let rest = cl
        .characteristic
        .iter()
        .map(|x| x.linear_coefficients(&is_function).map(|(_, free)| free))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| EngineError::NotLinearInFunction(cl.functions.join(", ")))?;
    let reduced = rest
        .iter()
        .map(|x| on_shell_reduce(x, sys))
        .collect::<Result<Vec<_>, _>>()?;
    let classification = if reduced.iter().all(Expr::is_zero) {
        Triviality::Trivial
    } else {
        Triviality::Nontrivial
    };
    let residual_fluxes: Vec<DeltaCombination> =
        residual.into_iter().map(DeltaCombination::new).collect();
    let kind1: Vec<Expr> = residual_fluxes.iter().map(|c| c.expand(sys)).collect();
    let kind2 = cl
        .fluxes
        .iter()
        .zip(&kind1)
        .map(|(k, r)| k.sub(r))
        .collect();
    Ok(TrivialityReport {
        classification,
        identities,
        residual_fluxes,
        kind1,
        kind2,
        reduced_characteristic: reduced,
    })
}

/// `M^i_f = Σ_j D_j T^j + Q^i + residual` for a variable `i` in the
/// dependency block of `f`.
#[derive(Clone, Debug)]
pub struct FluxDecomposition {
    pub index: VarId,
    /// `T^j = -Σ_J Φ^i_J[f, M^{jJ}]` for `j` outside the block.
    pub t: Vec<(VarId, Expr)>,
    /// `Σ_J Φ^i_J[f, ξ^{aJ} Δ_a]`, vanishing on-shell.
    pub q: DeltaCombination,
    /// Whatever is left; divergence-free in the block variables.
    pub residual: Expr,
}

#[derive(Clone, Debug)]
pub struct SubsetTheoremOutcome {
    pub function: Arc<str>,
    /// `(-D)_J M^{iJ}` for `i` outside the block, zero inside it.
    pub fluxes: Vec<Expr>,
    /// `Σ (-D)_J[ξ^{aJ} Δ_a]`, the divergence of `fluxes`.
    pub rhs: DeltaCombination,
    /// The same law in characteristic form.
    pub law: ConservationLaw,
    pub decompositions: Vec<FluxDecomposition>,
}

/// For a law with an arbitrary function of a proper subset `B` of the
/// variables: a second law free of the function, and each flux along `B`
/// written as a divergence plus terms vanishing on-shell.
pub fn subset_variable_theorem(
    cl: &ConservationLaw,
    sys: &DifferentialSystem,
    name: &str,
) -> Result<SubsetTheoremOutcome, EngineError> {
    let p = sys.space().p();
    let deps = function_decl(sys, name)?;
    if deps.len() == p {
        return Err(EngineError::FunctionScope(name.to_string()));
    }
    let (xi, xi_free) = characteristic_arrays(cl, name)?;
    let mut m = Vec::new();
    let mut flux_free = Vec::new();
    for k in &cl.fluxes {
        let (arr, free) = split_on_function(k, name)?;
        m.push(arr);
        flux_free.push(free);
    }
    if xi_free.iter().chain(&flux_free).any(|e| !e.is_zero()) {
        return Err(EngineError::NotLinearInFunction(name.to_string()));
    }
    let f = Expr::arbfn(ArbFnAtom::new(name, deps, MultiIndex::empty()));

    let fluxes: Vec<Expr> = (0..p)
        .map(|i| {
            if deps.contains(VarId(i as u8)) {
                return Expr::zero();
            }
            let parts: Vec<Expr> = m[i]
                .iter()
                .map(|(j, c)| adjoint_derivative_multi(c, j))
                .collect();
            Expr::sum(parts.iter())
        })
        .collect();
    let rhs = adjoint_combination(sys, &xi);
    let law = law_from_combination(sys, &fluxes, &rhs).map_err(|e| match e {
        EngineError::FluxMismatch(residue) => EngineError::IdentityFails {
            function: name.to_string(),
            residue,
        },
        other => other,
    })?;

    let q_all = residual_fluxes(sys, &f, &xi);
    let mut decompositions = Vec::new();
    for i in deps.iter() {
        let mut t = Vec::new();
        let mut div_t = Vec::new();
        for jv in (0..p)
            .map(|j| VarId(j as u8))
            .filter(|j| !deps.contains(*j))
        {
            let parts: Vec<Expr> = m[jv.index()]
                .iter()
                .map(|(jj, c)| ibp_phi(&f, c, jj, p).swap_remove(i.index()))
                .collect();
            let tj = Expr::sum(parts.iter()).neg();
            div_t.push(total_derivative(&tj, jv));
            t.push((jv, tj));
        }
        let q = q_all[i.index()].clone();
        let residual = cl.fluxes[i.index()]
            .sub(&Expr::sum(div_t.iter()))
            .sub(&q.expand(sys));
        decompositions.push(FluxDecomposition {
            index: i,
            t,
            q,
            residual,
        });
    }
    Ok(SubsetTheoremOutcome {
        function: Arc::from(name),
        fluxes,
        rhs,
        law,
        decompositions,
    })
}
