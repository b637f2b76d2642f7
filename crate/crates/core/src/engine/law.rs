use std::collections::BTreeSet;
use std::sync::Arc;

use crate::expr::{Atom, Expr, MultiIndex, VarId};
use crate::jet::divergence;

use super::reduce::EquationDerivatives;
use super::DifferentialSystem;

/// A linear combination `Σ d^{aK} D_K Δ_a` kept symbolic in the equations.
///
/// Each `D_K Δ_a` is an arbitrary-function atom named after the equation,
/// so that total derivatives and integration by parts act on it directly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeltaCombination {
    expr: Expr,
}

impl DeltaCombination {
    pub fn new(expr: Expr) -> Self {
        DeltaCombination { expr }
    }

    /// `ξ^a Δ_a` for a tuple of multipliers.
    pub fn from_multipliers(sys: &DifferentialSystem, xi: &[Expr]) -> Self {
        let parts: Vec<Expr> = xi
            .iter()
            .enumerate()
            .map(|(a, x)| x.mul(&sys.placeholder(a, &MultiIndex::empty())))
            .collect();
        DeltaCombination::new(Expr::sum(parts.iter()))
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn is_zero(&self) -> bool {
        self.expr.is_zero()
    }

    /// Substitutes the equations for their symbols.
    pub fn expand(&self, sys: &DifferentialSystem) -> Expr {
        EquationDerivatives::new(sys).expand(&self.expr)
    }

    /// `(a, K, d^{aK})` for each term; `None` if the form is not linear in
    /// the equation symbols.
    pub fn terms(&self, sys: &DifferentialSystem) -> Option<Vec<(usize, MultiIndex, Expr)>> {
        let (pairs, free) = self
            .expr
            .linear_coefficients(&|a: &Atom| sys.placeholder_of(a).is_some())?;
        if !free.is_zero() {
            return None;
        }
        Some(
            pairs
                .into_iter()
                .map(|(atom, c)| {
                    let (a, k) = sys.placeholder_of(&atom).unwrap();
                    (a, k, c)
                })
                .collect(),
        )
    }

    pub fn render(&self, sys: &DifferentialSystem) -> String {
        sys.space().render(&self.expr)
    }
}

/// `D_i K^i = ξ^a Δ_a`, holding identically on jet space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConservationLaw {
    pub fluxes: Vec<Expr>,
    pub characteristic: Vec<Expr>,
    /// Arbitrary functions the law depends on.
    pub functions: Vec<Arc<str>>,
}

impl ConservationLaw {
    pub fn new(fluxes: Vec<Expr>, characteristic: Vec<Expr>) -> Self {
        let mut names = BTreeSet::new();
        for e in fluxes.iter().chain(&characteristic) {
            for a in e.atoms() {
                if let Atom::Fn(f) = a {
                    names.insert(f.name.clone());
                }
            }
        }
        ConservationLaw {
            fluxes,
            characteristic,
            functions: names.into_iter().collect(),
        }
    }

    pub fn zero(p: usize, n: usize) -> Self {
        ConservationLaw::new(vec![Expr::zero(); p], vec![Expr::zero(); n])
    }

    /// `D_i K^i - ξ^a Δ_a`; zero for a valid law.
    pub fn residual(&self, sys: &DifferentialSystem) -> Expr {
        let rhs: Vec<Expr> = self
            .characteristic
            .iter()
            .zip(sys.equations())
            .map(|(x, d)| x.mul(d))
            .collect();
        divergence(&self.fluxes).sub(&Expr::sum(rhs.iter()))
    }

    pub fn is_valid(&self, sys: &DifferentialSystem) -> bool {
        self.fluxes.len() == sys.space().p()
            && self.characteristic.len() == sys.len()
            && self.residual(sys).is_zero()
    }

    /// The right-hand side `ξ^a Δ_a` with the equations symbolic.
    pub fn rhs(&self, sys: &DifferentialSystem) -> DeltaCombination {
        DeltaCombination::from_multipliers(sys, &self.characteristic)
    }
}

/// A relation among the equations that holds off-shell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialIdentity {
    pub combination: DeltaCombination,
    /// The combination with the equations substituted; zero when the
    /// identity holds.
    pub expr: Expr,
    pub provenance: String,
}

impl DifferentialIdentity {
    pub fn new(
        sys: &DifferentialSystem,
        combination: DeltaCombination,
        provenance: impl Into<String>,
    ) -> Self {
        let expr = combination.expand(sys);
        DifferentialIdentity {
            combination,
            expr,
            provenance: provenance.into(),
        }
    }

    pub fn holds(&self) -> bool {
        self.expr.is_zero()
    }

    /// Peels a total derivative `D_m` common to every term when all
    /// coefficients are constants, e.g. `D_i(D_tΔ_4 - D_jΔ_j) = 0` becomes
    /// `D_tΔ_4 - D_jΔ_j = 0`. Returns `None` unless the result is again an
    /// identity.
    pub fn strengthen(&self, sys: &DifferentialSystem) -> Option<DifferentialIdentity> {
        let terms = self.combination.terms(sys)?;
        if terms.is_empty() || terms.iter().any(|(_, _, c)| c.as_constant().is_none()) {
            return None;
        }
        let p = sys.space().p();
        let m = (0..p)
            .map(|v| VarId(v as u8))
            .find(|&v| terms.iter().all(|(_, k, _)| k.count(v) > 0))?;
        let parts: Vec<Expr> = terms
            .iter()
            .map(|(a, k, c)| c.mul(&sys.placeholder(*a, &k.lower(m).unwrap())))
            .collect();
        let stronger = DifferentialIdentity::new(
            sys,
            DeltaCombination::new(Expr::sum(parts.iter())),
            format!("{} (common derivative removed)", self.provenance),
        );
        stronger.holds().then_some(stronger)
    }

    pub fn render(&self, sys: &DifferentialSystem) -> String {
        format!("{} = 0", self.combination.render(sys))
    }
}
