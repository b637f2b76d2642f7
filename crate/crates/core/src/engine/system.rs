use std::sync::Arc;

use crate::expr::{ArbFnAtom, Atom, Expr, JetAtom, MultiIndex, Space, VarId, VarSet};

use super::EngineError;

/// An equation solved for its leading atom: `Δ = c·A + rest`.
#[derive(Clone, Debug)]
pub(crate) struct Solved {
    pub leading: JetAtom,
    /// `-rest / c`.
    pub solution: Expr,
    /// `1 / c`.
    pub inverse_coeff: Expr,
}

/// A system of differential equations `Δ_a = 0` with a ranking.
#[derive(Clone, Debug)]
pub struct DifferentialSystem {
    space: Space,
    equations: Vec<Expr>,
    names: Vec<Arc<str>>,
    solved: Vec<Solved>,
    order_cap: Option<usize>,
}

impl DifferentialSystem {
    /// Builds a system using the default ranking: the highest-order jet
    /// atom in which the equation is linear, ties broken towards
    /// derivatives in later-declared variables.
    pub fn new(space: Space, equations: Vec<Expr>) -> Result<Self, EngineError> {
        let leading = equations
            .iter()
            .enumerate()
            .map(|(a, e)| default_leading(e).ok_or(EngineError::RankingIncomplete { equation: a }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::with_ranking(space, equations, leading)
    }

    pub fn with_ranking(
        space: Space,
        equations: Vec<Expr>,
        leading: Vec<JetAtom>,
    ) -> Result<Self, EngineError> {
        if leading.len() != equations.len() {
            return Err(EngineError::Shape("one leading atom per equation"));
        }
        let solved = equations
            .iter()
            .zip(leading)
            .enumerate()
            .map(|(a, (e, lead))| {
                solve_for(e, lead).ok_or(EngineError::RankingIncomplete { equation: a })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let names = (1..=equations.len())
            .map(|a| Arc::from(format!("Delta{a}")))
            .collect();
        let sys = DifferentialSystem {
            space,
            equations,
            names,
            solved,
            order_cap: None,
        };
        sys.check_names()?;
        Ok(sys)
    }

    /// Renames the equations; names label them in rendered combinations.
    pub fn with_names<S: AsRef<str>>(mut self, names: &[S]) -> Result<Self, EngineError> {
        if names.len() != self.equations.len() {
            return Err(EngineError::Shape("one name per equation"));
        }
        self.names = names.iter().map(|n| Arc::from(n.as_ref())).collect();
        self.check_names()?;
        Ok(self)
    }

    pub fn with_order_cap(mut self, cap: usize) -> Self {
        self.order_cap = Some(cap);
        self
    }

    fn check_names(&self) -> Result<(), EngineError> {
        for (k, n) in self.names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric())
                && n.as_ref() != "D";
            let taken = self.space.var_id(n).is_some()
                || self.space.dep_id(n).is_some()
                || self.space.function(n).is_some()
                || self.space.has_parameter(n)
                || self.names[..k].contains(n);
            if !valid || taken {
                return Err(EngineError::BadEquationName(n.to_string()));
            }
        }
        Ok(())
    }

    /// The system together with the equations of `aux`, ranked as given.
    pub fn union(&self, aux: &DifferentialSystem) -> Result<Self, EngineError> {
        if aux.space != self.space {
            return Err(EngineError::Shape("systems over different variables"));
        }
        let mut out = self.clone();
        out.equations.extend(aux.equations.iter().cloned());
        out.solved.extend(aux.solved.iter().cloned());
        out.names.extend(aux.names.iter().cloned());
        out.check_names()?;
        Ok(out)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn equations(&self) -> &[Expr] {
        &self.equations
    }

    pub fn equation(&self, a: usize) -> &Expr {
        &self.equations[a]
    }

    pub fn names(&self) -> &[Arc<str>] {
        &self.names
    }

    pub fn leading(&self, a: usize) -> &JetAtom {
        &self.solved[a].leading
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub(crate) fn solved(&self) -> &[Solved] {
        &self.solved
    }

    /// Highest jet order among the equations.
    pub fn order(&self) -> usize {
        self.equations
            .iter()
            .filter_map(Expr::jet_order)
            .max()
            .unwrap_or(0)
    }

    /// Bound on `|J|` for rewriting `D_J` of a leading atom inside `e`.
    pub fn order_cap_for(&self, e: &Expr) -> usize {
        self.order_cap
            .unwrap_or_else(|| e.jet_order().unwrap_or(0) + self.order())
    }

    /// The symbol standing for `D_J Δ_a` in unexpanded combinations.
    pub fn placeholder(&self, a: usize, j: &MultiIndex) -> Expr {
        Expr::arbfn(ArbFnAtom::new(
            self.names[a].clone(),
            VarSet::all(self.space.p()),
            j.clone(),
        ))
    }

    /// Which equation a placeholder atom refers to.
    pub(crate) fn placeholder_of(&self, atom: &Atom) -> Option<(usize, MultiIndex)> {
        match atom {
            Atom::Fn(f) => self
                .names
                .iter()
                .position(|n| *n == f.name)
                .map(|a| (a, f.index.clone())),
            _ => None,
        }
    }

    pub fn var(&self, name: &str) -> VarId {
        self.space
            .var_id(name)
            .unwrap_or_else(|| panic!("undeclared independent variable `{name}`"))
    }
}

fn solve_for(e: &Expr, lead: JetAtom) -> Option<Solved> {
    let coeffs = e.coefficients_in(&Atom::Jet(lead.clone()))?;
    if coeffs.len() != 2 {
        return None;
    }
    let inverse_coeff = coeffs[1].checked_pow(-1)?;
    let solution = coeffs[0].neg().mul(&inverse_coeff);
    Some(Solved {
        leading: lead,
        solution,
        inverse_coeff,
    })
}

fn default_leading(e: &Expr) -> Option<JetAtom> {
    let mut atoms: Vec<JetAtom> = e.jet_atoms().into_iter().collect();
    let rank = |j: &JetAtom| {
        let counts: Vec<u8> = (0..32).rev().map(|v| j.index.count(VarId(v))).collect();
        (j.order(), counts, j.dep)
    };
    atoms.sort_by_key(|j| std::cmp::Reverse(rank(j)));
    atoms.into_iter().find(|j| {
        e.coefficients_in(&Atom::Jet(j.clone()))
            .is_some_and(|c| c.len() == 2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_ranking_prefers_order_then_later_variables() {
        let s = Space::new(["t", "x"], ["u"]).unwrap();
        let kdv = DifferentialSystem::new(s.clone(), vec![s.parse("u_t + u*u_x + u_xxx").unwrap()])
            .unwrap();
        assert_eq!(kdv.leading(0), &s.jet_atom("u", &["x", "x", "x"]));
        let wave =
            DifferentialSystem::new(s.clone(), vec![s.parse("u_tt - u_xx").unwrap()]).unwrap();
        assert_eq!(wave.leading(0), &s.jet_atom("u", &["x", "x"]));
        let nonlinear =
            DifferentialSystem::new(s.clone(), vec![s.parse("u_xx^2 + u_t").unwrap()]).unwrap();
        assert_eq!(nonlinear.leading(0), &s.jet_atom("u", &["t"]));
    }

    #[test]
    fn explicit_ranking_must_be_linear() {
        let s = Space::new(["t", "x"], ["u"]).unwrap();
        let eq = s.parse("u_t^2 + u_x").unwrap();
        let err =
            DifferentialSystem::with_ranking(s.clone(), vec![eq], vec![s.jet_atom("u", &["t"])]);
        assert!(matches!(
            err,
            Err(EngineError::RankingIncomplete { equation: 0 })
        ));
    }

    #[test]
    fn names_must_not_collide() {
        let s = Space::new(["t", "x"], ["u"]).unwrap();
        let sys = DifferentialSystem::new(s.clone(), vec![s.parse("u_t").unwrap()]).unwrap();
        assert!(sys.clone().with_names(&["u"]).is_err());
        assert!(sys.with_names(&["E"]).is_ok());
    }
}
