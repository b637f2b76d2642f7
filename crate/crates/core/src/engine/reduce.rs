use std::collections::BTreeMap;

use crate::expr::{Atom, Expr, JetAtom, MultiIndex};
use crate::jet::{leibniz_coefficients, Derivatives};

use super::{DeltaCombination, DifferentialSystem, EngineError};

/// Safety net against rankings that never reach a fixed point.
const MAX_STEPS: usize = 20_000;

/// `e = Σ c^{aJ} D_J Δ_a + remainder`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdealDecomposition {
    pub coefficients: BTreeMap<(usize, MultiIndex), Expr>,
    pub remainder: Expr,
}

impl IdealDecomposition {
    pub fn coefficient(&self, a: usize, j: &MultiIndex) -> Expr {
        self.coefficients
            .get(&(a, j.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// `Σ c^{aJ} D_J Δ_a` with the equations left symbolic.
    pub fn combination(&self, sys: &DifferentialSystem) -> DeltaCombination {
        let parts: Vec<Expr> = self
            .coefficients
            .iter()
            .map(|((a, j), c)| c.mul(&sys.placeholder(*a, j)))
            .collect();
        DeltaCombination::new(Expr::sum(parts.iter()))
    }

    /// `Σ c^{aJ} D_J Δ_a + remainder`, fully expanded.
    pub fn reassemble(&self, sys: &DifferentialSystem) -> Expr {
        self.combination(sys).expand(sys).add(&self.remainder)
    }

    fn accumulate(&mut self, a: usize, j: MultiIndex, c: Expr) {
        if c.is_zero() {
            return;
        }
        let slot = self.coefficients.entry((a, j)).or_default();
        *slot = slot.add(&c);
        self.coefficients.retain(|_, v| !v.is_zero());
    }

    /// Adds `scale · other` coefficient-wise; the remainders are ignored.
    pub(crate) fn add_scaled(&mut self, other: &IdealDecomposition, scale: &Expr) {
        for ((a, j), c) in &other.coefficients {
            self.accumulate(*a, j.clone(), c.mul(scale));
        }
    }

    pub(crate) fn add_coefficient(&mut self, a: usize, j: MultiIndex, c: Expr) {
        self.accumulate(a, j, c);
    }
}

/// Rewrites leading atoms one at a time, always choosing the smallest
/// (equation, multi-index) pair among the reducible atoms present.
struct Rewriter<'a> {
    sys: &'a DifferentialSystem,
    cap: usize,
    solutions: Vec<Derivatives>,
}

impl<'a> Rewriter<'a> {
    fn new(sys: &'a DifferentialSystem, cap: usize) -> Self {
        let solutions = sys
            .solved()
            .iter()
            .map(|s| Derivatives::new(s.solution.clone()))
            .collect();
        Rewriter {
            sys,
            cap,
            solutions,
        }
    }

    fn next_target(&self, e: &Expr) -> Result<Option<(usize, MultiIndex, JetAtom)>, EngineError> {
        let mut best: Option<(usize, MultiIndex, JetAtom)> = None;
        for atom in e.jet_atoms() {
            for (a, s) in self.sys.solved().iter().enumerate() {
                if s.leading.dep != atom.dep {
                    continue;
                }
                let Some(j) = atom.index.checked_sub(&s.leading.index) else {
                    continue;
                };
                let better = match &best {
                    None => true,
                    Some((b, bj, _)) => (a, &j) < (*b, bj),
                };
                if better {
                    best = Some((a, j, atom.clone()));
                }
                break;
            }
        }
        if let Some((_, j, atom)) = &best {
            if j.order() > self.cap {
                return Err(EngineError::CapExceeded {
                    atom: atom.clone(),
                    cap: self.cap,
                });
            }
        }
        Ok(best)
    }

    fn solution(&mut self, a: usize, j: &MultiIndex) -> Expr {
        self.solutions[a].get(j)
    }
}

/// Replaces every derivative of a leading atom by the corresponding
/// derivative of its solved form, until none remain.
pub fn on_shell_reduce(e: &Expr, sys: &DifferentialSystem) -> Result<Expr, EngineError> {
    on_shell_reduce_capped(e, sys, sys.order_cap_for(e))
}

pub fn on_shell_reduce_capped(
    e: &Expr,
    sys: &DifferentialSystem,
    cap: usize,
) -> Result<Expr, EngineError> {
    let mut rw = Rewriter::new(sys, cap);
    let mut cur = e.clone();
    for _ in 0..MAX_STEPS {
        let Some((a, j, atom)) = rw.next_target(&cur)? else {
            return Ok(cur);
        };
        let s = rw.solution(a, &j);
        cur = cur.substitute(&Atom::Jet(atom), &s);
    }
    Err(EngineError::NoFixedPoint)
}

/// Tracks the rewrites of [`on_shell_reduce`] as multiples of `D_J Δ_a`.
pub fn ideal_decompose(
    e: &Expr,
    sys: &DifferentialSystem,
) -> Result<IdealDecomposition, EngineError> {
    ideal_decompose_capped(e, sys, sys.order_cap_for(e))
}

pub fn ideal_decompose_capped(
    e: &Expr,
    sys: &DifferentialSystem,
    cap: usize,
) -> Result<IdealDecomposition, EngineError> {
    let mut rw = Rewriter::new(sys, cap);
    let mut out = IdealDecomposition::default();
    let mut cur = e.clone();
    for _ in 0..MAX_STEPS {
        let Some((a, j, atom)) = rw.next_target(&cur)? else {
            out.remainder = cur;
            return Ok(out);
        };
        let target = Atom::Jet(atom.clone());
        let coeffs = cur
            .coefficients_in(&target)
            .ok_or(EngineError::AtomInFunction(atom))?;
        let s = rw.solution(a, &j);
        let a_expr = Expr::atom(target);
        // cur = Σ_k c_k A^k;  Σ_k c_k (A^k - S^k) = (A - S) Σ_k c_k Σ_{i<k} A^i S^{k-1-i}.
        let n = coeffs.len();
        let mut a_pows = vec![Expr::one()];
        let mut s_pows = vec![Expr::one()];
        for k in 1..n {
            a_pows.push(a_pows[k - 1].mul(&a_expr));
            s_pows.push(s_pows[k - 1].mul(&s));
        }
        let mut next = Vec::with_capacity(n);
        let mut quotient = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next.push(c.mul(&s_pows[k]));
            for i in 0..k {
                quotient.push(c.mul(&a_pows[i]).mul(&s_pows[k - 1 - i]));
            }
        }
        let q = Expr::sum(quotient.iter());
        // A - S = D_J(u_L - s_a) = D_J(Δ_a / c_a), expanded by Leibniz.
        let inv = &sys.solved()[a].inverse_coeff;
        for (k, w) in leibniz_coefficients(inv, &j) {
            out.accumulate(a, k, q.mul(&w));
        }
        cur = Expr::sum(next.iter());
    }
    Err(EngineError::NoFixedPoint)
}

/// On-shell reduction modulo the system together with auxiliary constraints.
pub fn reduce_with_constraints(
    e: &Expr,
    sys: &DifferentialSystem,
    aux: &DifferentialSystem,
) -> Result<Expr, EngineError> {
    on_shell_reduce(e, &sys.union(aux)?)
}

/// `D_J Δ_a` for every placeholder, memoized per equation.
pub(crate) struct EquationDerivatives<'a> {
    sys: &'a DifferentialSystem,
    cache: Vec<Derivatives>,
}

impl<'a> EquationDerivatives<'a> {
    pub fn new(sys: &'a DifferentialSystem) -> Self {
        EquationDerivatives {
            sys,
            cache: sys
                .equations()
                .iter()
                .cloned()
                .map(Derivatives::new)
                .collect(),
        }
    }

    pub fn get(&mut self, a: usize, j: &MultiIndex) -> Expr {
        self.cache[a].get(j)
    }

    pub fn expand(&mut self, e: &Expr) -> Expr {
        let sys = self.sys;
        e.map_atoms(&mut |atom| sys.placeholder_of(atom).map(|(a, j)| self.get(a, &j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Space;
    use crate::jet::total_derivative_multi;

    fn kdv() -> (Space, DifferentialSystem) {
        let s = Space::new(["t", "x"], ["u"]).unwrap();
        let sys = DifferentialSystem::with_ranking(
            s.clone(),
            vec![s.parse("u_t + u*u_x + u_xxx").unwrap()],
            vec![s.jet_atom("u", &["t"])],
        )
        .unwrap();
        (s, sys)
    }

    fn liouville() -> (Space, DifferentialSystem) {
        let s = Space::new(["t", "x"], ["u"]).unwrap();
        let sys = DifferentialSystem::with_ranking(
            s.clone(),
            vec![s.parse("u_tx - exp(u)").unwrap()],
            vec![s.jet_atom("u", &["t", "x"])],
        )
        .unwrap();
        (s, sys)
    }

    #[test]
    fn reduction_examples() {
        let (s, sys) = kdv();
        assert!(on_shell_reduce(sys.equation(0), &sys).unwrap().is_zero());
        assert_eq!(
            on_shell_reduce(&s.parse("u_tx").unwrap(), &sys).unwrap(),
            s.parse("-(u_x^2 + u*u_xx + u_xxxx)").unwrap()
        );
        let (s, sys) = liouville();
        assert_eq!(
            on_shell_reduce(&s.parse("u_txx").unwrap(), &sys).unwrap(),
            s.parse("exp(u)*u_x").unwrap()
        );
    }

    #[test]
    fn decomposition_examples() {
        let (s, sys) = kdv();
        let d = ideal_decompose(sys.equation(0), &sys).unwrap();
        assert_eq!(d.coefficients.len(), 1);
        assert!(d.coefficient(0, &MultiIndex::empty()).is_one());
        assert!(d.remainder.is_zero());

        let x = s.var_id("x").unwrap();
        let e = total_derivative_multi(sys.equation(0), &MultiIndex::single(x))
            .add(&s.parse("u").unwrap());
        let d = ideal_decompose(&e, &sys).unwrap();
        assert_eq!(d.coefficients.len(), 1);
        assert!(d.coefficient(0, &MultiIndex::single(x)).is_one());
        assert_eq!(d.remainder, s.parse("u").unwrap());

        let (s, sys) = liouville();
        let e = s.parse("u_t*u_tx - u_txt").unwrap();
        let d = ideal_decompose(&e, &sys).unwrap();
        assert!(d.remainder.is_zero());
        assert_eq!(d.reassemble(&sys), e);
        let t = s.var_id("t").unwrap();
        assert_eq!(
            d.coefficient(0, &MultiIndex::empty()),
            s.parse("u_t").unwrap()
        );
        assert_eq!(
            d.coefficient(0, &MultiIndex::single(t)),
            s.parse("-1").unwrap()
        );
    }

    #[test]
    fn nonlinear_occurrences_decompose() {
        let (s, sys) = kdv();
        let e = s.parse("u_t^3*x + u_tx^2*u - u_tt").unwrap();
        let d = ideal_decompose(&e, &sys).unwrap();
        assert_eq!(d.reassemble(&sys), e);
        assert_eq!(d.remainder, on_shell_reduce(&e, &sys).unwrap());
        assert_eq!(on_shell_reduce(&d.remainder, &sys).unwrap(), d.remainder);
    }

    #[test]
    fn cap_and_function_errors() {
        let (s, sys) = kdv();
        let e = s.parse("u_tt").unwrap();
        assert!(matches!(
            ideal_decompose_capped(&e, &sys, 0),
            Err(EngineError::CapExceeded { .. })
        ));
        let e = s.parse("sin(u_t)").unwrap();
        assert!(matches!(
            ideal_decompose(&e, &sys),
            Err(EngineError::AtomInFunction(_))
        ));
        assert_eq!(
            on_shell_reduce(&e, &sys).unwrap(),
            s.parse("-sin(u*u_x + u_xxx)").unwrap()
        );
    }
}
