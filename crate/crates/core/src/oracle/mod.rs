//! Numerical cross-checks of symbolic identities on random polynomial
//! trial functions.
//!
//! Every dependent variable and every declared arbitrary function is
//! replaced by a random polynomial, so all jet values are exact up to
//! rounding. Total derivatives of fluxes are taken by forward-mode
//! differentiation of the substituted expression, independently of the
//! symbolic total derivative.

mod dual;

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{ConservationLaw, DifferentialSystem};
use crate::expr::{
    evaluate, evaluate_terms, Atom, EvalError, Expr, MultiIndex, Space, VarId, VarSet,
};

pub use dual::Dual;

/// Multivariate polynomial in the independent variables.
#[derive(Clone, Debug)]
struct Poly {
    terms: Vec<(Vec<u32>, f64)>,
}

fn exponent_vectors(vars: &[usize], p: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; p]];
    for &v in vars {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..=degree - used {
                let mut e2 = e.clone();
                e2[v] = k;
                next.push(e2);
            }
        }
        out = next;
    }
    out
}

impl Poly {
    fn random(deps: VarSet, p: usize, degree: u32, rng: &mut impl Rng) -> Self {
        let vars: Vec<usize> = deps.iter().map(VarId::index).collect();
        let terms = exponent_vectors(&vars, p, degree)
            .into_iter()
            .map(|e| (e, rng.gen_range(-1.0..=1.0)))
            .collect();
        Poly { terms }
    }

    /// `∂_J P` at `x`.
    fn derivative(&self, j: &MultiIndex, x: &[f64]) -> f64 {
        let mut total = 0.0;
        'terms: for (e, c) in &self.terms {
            let mut v = *c;
            for (i, &ei) in e.iter().enumerate() {
                let ji = j.count(VarId(i as u8)) as u32;
                if ji > ei {
                    continue 'terms;
                }
                for k in 0..ji {
                    v *= (ei - k) as f64;
                }
                v *= x[i].powi((ei - ji) as i32);
            }
            total += v;
        }
        total
    }
}

/// One random instance: a point of the base space, a polynomial for each
/// dependent variable and arbitrary function, and a value per parameter.
#[derive(Clone, Debug)]
pub struct TrialProfile {
    point: Vec<f64>,
    deps: Vec<Poly>,
    functions: HashMap<Arc<str>, Poly>,
    params: HashMap<Arc<str>, f64>,
}

impl TrialProfile {
    /// Coefficients and coordinates drawn uniformly from `[-1, 1]`.
    pub fn random(space: &Space, degree: u32, rng: &mut impl Rng) -> Self {
        let p = space.p();
        let point = (0..p).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let deps = space
            .deps()
            .map(|_| Poly::random(VarSet::all(p), p, degree, rng))
            .collect();
        let functions = space
            .functions()
            .iter()
            .map(|f| (f.name.clone(), Poly::random(f.deps, p, degree, rng)))
            .collect();
        let params = space
            .parameters()
            .iter()
            .map(|n| (Arc::from(n.as_str()), rng.gen_range(-1.0..=1.0)))
            .collect();
        TrialProfile {
            point,
            deps,
            functions,
            params,
        }
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    fn jet(&self, atom: &Atom, j: &MultiIndex) -> Result<f64, EvalError> {
        match atom {
            Atom::Jet(a) => Ok(self.deps[a.dep.index()].derivative(&a.index.add(j), &self.point)),
            Atom::Fn(f) => self
                .functions
                .get(&f.name)
                .map(|poly| poly.derivative(&f.index.add(j), &self.point))
                .ok_or_else(|| EvalError::Missing(atom.clone())),
            Atom::Var(v) => Ok(match j.order() {
                0 => self.point[v.index()],
                1 if j.count(*v) == 1 => 1.0,
                _ => 0.0,
            }),
            Atom::Param(n) => {
                let v = self
                    .params
                    .get(n)
                    .copied()
                    .ok_or_else(|| EvalError::Missing(atom.clone()))?;
                Ok(if j.is_empty() { v } else { 0.0 })
            }
        }
    }

    pub fn value(&self, atom: &Atom) -> Result<f64, EvalError> {
        self.jet(atom, &MultiIndex::empty())
    }

    pub fn evaluate(&self, e: &Expr) -> Result<f64, EvalError> {
        evaluate(e, &mut |a: &Atom| self.value(a))
    }

    fn terms(&self, e: &Expr) -> Result<Vec<f64>, EvalError> {
        evaluate_terms(e, &mut |a: &Atom| self.value(a))
    }

    /// `D_i` of each term of `e` by forward-mode differentiation.
    fn derivative_terms(&self, e: &Expr, i: VarId) -> Result<Vec<f64>, EvalError> {
        let di = MultiIndex::single(i);
        let terms = evaluate_terms(e, &mut |a: &Atom| {
            Ok(Dual::new(self.value(a)?, self.jet(a, &di)?))
        })?;
        Ok(terms.into_iter().map(|d| d.eps).collect())
    }

    /// `D_i e` at the trial point.
    pub fn total_derivative(&self, e: &Expr, i: VarId) -> Result<f64, EvalError> {
        Ok(self.derivative_terms(e, i)?.into_iter().sum())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub degree: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            trials: 50,
            seed: 0,
            tol: 1e-8,
            degree: 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleReport {
    /// Largest `|Σ terms| / (1 + max |term|)` over the trials.
    pub max_residual: f64,
    pub trials: usize,
    pub tol: f64,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tol
    }
}

fn relative(terms: &[f64]) -> f64 {
    let sum: f64 = terms.iter().sum();
    let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    sum.abs() / (1.0 + scale)
}

fn run(
    space: &Space,
    cfg: &OracleConfig,
    mut trial: impl FnMut(&TrialProfile) -> Result<Vec<f64>, EvalError>,
) -> Result<OracleReport, EvalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = 0.0f64;
    for _ in 0..cfg.trials {
        let profile = TrialProfile::random(space, cfg.degree, &mut rng);
        let r = relative(&trial(&profile)?);
        worst = if r.is_nan() {
            f64::INFINITY
        } else {
            worst.max(r)
        };
    }
    Ok(OracleReport {
        max_residual: worst,
        trials: cfg.trials,
        tol: cfg.tol,
    })
}

/// Checks `e ≡ 0` numerically.
pub fn verify_identity(
    space: &Space,
    e: &Expr,
    cfg: &OracleConfig,
) -> Result<OracleReport, EvalError> {
    run(space, cfg, |pr| pr.terms(e))
}

/// Checks `Σ parts ≡ 0` with each part evaluated on its own, so that a
/// sum that cancels symbolically is still tested term by term.
pub fn verify_sum(
    space: &Space,
    parts: &[Expr],
    cfg: &OracleConfig,
) -> Result<OracleReport, EvalError> {
    run(space, cfg, |pr| {
        let mut terms = Vec::new();
        for e in parts {
            terms.extend(pr.terms(e)?);
        }
        Ok(terms)
    })
}

/// Checks `Σ_i D_i K^i ≡ rhs`, differentiating the fluxes numerically.
pub fn verify_divergence(
    space: &Space,
    fluxes: &[Expr],
    rhs: &Expr,
    cfg: &OracleConfig,
) -> Result<OracleReport, EvalError> {
    run(space, cfg, |pr| {
        let mut terms = Vec::new();
        for (i, k) in fluxes.iter().enumerate() {
            terms.extend(pr.derivative_terms(k, VarId(i as u8))?);
        }
        terms.extend(pr.terms(rhs)?.into_iter().map(|t| -t));
        Ok(terms)
    })
}

/// Checks `D_i K^i ≡ ξ^a Δ_a` off-shell; generic profiles suffice.
pub fn verify_conservation_law(
    cl: &ConservationLaw,
    sys: &DifferentialSystem,
    cfg: &OracleConfig,
) -> Result<OracleReport, EvalError> {
    if cl.fluxes.len() != sys.space().p() || cl.characteristic.len() != sys.len() {
        return Ok(OracleReport {
            max_residual: f64::INFINITY,
            trials: 0,
            tol: cfg.tol,
        });
    }
    run(sys.space(), cfg, |pr| {
        let mut terms = Vec::new();
        for (i, k) in cl.fluxes.iter().enumerate() {
            terms.extend(pr.derivative_terms(k, VarId(i as u8))?);
        }
        for (xi, d) in cl.characteristic.iter().zip(sys.equations()) {
            terms.push(-pr.evaluate(xi)? * pr.evaluate(d)?);
        }
        Ok(terms)
    })
}
