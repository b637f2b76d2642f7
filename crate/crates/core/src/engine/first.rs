use crate::expr::{DepId, Expr, MultiIndex};
use crate::jet::{
    adjoint_derivative_multi, divergence, divergence_reconstruct, euler, ibp_phi, noether_r_all,
    prolong_apply, EvolutionaryVectorField,
};

use super::reduce::{ideal_decompose, IdealDecomposition};
use super::{ConservationLaw, DeltaCombination, DifferentialSystem, EngineError};

/// `E_{u^q}(A) = Ξ^{qaJ} D_J Δ_a` for every `q`, or the failing remainders.
pub fn check_alternative_lagrangian(
    sys: &DifferentialSystem,
    a: &Expr,
) -> Result<Vec<IdealDecomposition>, EngineError> {
    let decs = sys
        .space()
        .deps()
        .map(|q| ideal_decompose(&euler(a, q), sys))
        .collect::<Result<Vec<_>, _>>()?;
    if decs.iter().any(|d| !d.remainder.is_zero()) {
        return Err(EngineError::NotQuasiNoether(
            decs.into_iter().map(|d| d.remainder).collect(),
        ));
    }
    Ok(decs)
}

/// Outcome of testing `X_α Δ_b = 0` on-shell.
#[derive(Clone, Debug)]
pub struct SymmetryCheck {
    pub holds: bool,
    /// `X_α Δ_b = τ^{baJ} D_J Δ_a + remainder_b`.
    pub tau: Vec<IdealDecomposition>,
}

impl SymmetryCheck {
    pub fn residues(&self) -> Vec<Expr> {
        self.tau.iter().map(|d| d.remainder.clone()).collect()
    }
}

pub fn is_symmetry(
    sys: &DifferentialSystem,
    alpha: &EvolutionaryVectorField,
) -> Result<SymmetryCheck, EngineError> {
    check_field(sys, alpha)?;
    let tau = sys
        .equations()
        .iter()
        .map(|d| ideal_decompose(&prolong_apply(alpha, d), sys))
        .collect::<Result<Vec<_>, _>>()?;
    let holds = tau.iter().all(|d| d.remainder.is_zero());
    Ok(SymmetryCheck { holds, tau })
}

fn check_field(
    sys: &DifferentialSystem,
    alpha: &EvolutionaryVectorField,
) -> Result<(), EngineError> {
    if alpha.components.len() != sys.space().m() {
        return Err(EngineError::Shape(
            "one field component per dependent variable",
        ));
    }
    Ok(())
}

/// Intermediate objects of the quasi-Noether construction.
#[derive(Clone, Debug)]
pub struct QuasiNoetherDerivation {
    pub law: ConservationLaw,
    /// `E_{u^q}(A) = Ξ^{qaJ} D_J Δ_a`.
    pub xi: Vec<IdealDecomposition>,
    /// `X_α A = γ^{aJ} D_J Δ_a`.
    pub gamma: IdealDecomposition,
    /// `R^i_α(A)`.
    pub noether_fluxes: Vec<Expr>,
}

/// Conservation law generated by a symmetry `α` of a quasi-Noether system
/// with alternative Lagrangian `A`.
///
/// With `E_{u^q}A = Ξ^{qaJ} D_JΔ_a` and `X_αA = γ^{aJ} D_JΔ_a` the Noether
/// identity gives `D_i R^i_α(A) = C^{aJ} D_JΔ_a` with
/// `C^{aJ} = γ^{aJ} - α^q Ξ^{qaJ}`; integrating by parts yields the
/// characteristic `ξ^a = (-D)_J C^{aJ}`. When `beta` is given, `A` must
/// equal `β^a Δ_a` and `γ` is assembled from the symmetry coefficients
/// `τ` as `β^b τ^{baJ} + [J = ∅] X_α β^a`.
pub fn first_theorem_quasi(
    sys: &DifferentialSystem,
    a: &Expr,
    alpha: &EvolutionaryVectorField,
    beta: Option<&[Expr]>,
) -> Result<QuasiNoetherDerivation, EngineError> {
    check_field(sys, alpha)?;
    let p = sys.space().p();
    let xi = check_alternative_lagrangian(sys, a)?;
    let gamma = match beta {
        Some(beta) => {
            if beta.len() != sys.len() {
                return Err(EngineError::Shape("one multiplier per equation"));
            }
            let combo: Vec<Expr> = beta
                .iter()
                .zip(sys.equations())
                .map(|(b, d)| b.mul(d))
                .collect();
            let diff = a.sub(&Expr::sum(combo.iter()));
            if !diff.is_zero() {
                return Err(EngineError::MultiplierMismatch(diff));
            }
            let sym = is_symmetry(sys, alpha)?;
            if !sym.holds {
                return Err(EngineError::NotASymmetry(sym.residues()));
            }
            let mut gamma = IdealDecomposition::default();
            for (b, tau) in beta.iter().zip(&sym.tau) {
                gamma.add_scaled(tau, b);
            }
            for (k, b) in beta.iter().enumerate() {
                gamma.add_coefficient(k, MultiIndex::empty(), prolong_apply(alpha, b));
            }
            gamma
        }
        None => {
            let d = ideal_decompose(&prolong_apply(alpha, a), sys)?;
            if !d.remainder.is_zero() {
                return Err(EngineError::NotASymmetry(vec![d.remainder]));
            }
            d
        }
    };
    let mut c = gamma.clone();
    for (q, dec) in xi.iter().enumerate() {
        c.add_scaled(dec, &alpha.component(DepId(q as u8)).neg());
    }
    let noether_fluxes = noether_r_all(alpha, p, a);
    let law = integrate_by_parts(sys, &c, noether_fluxes.clone());
    debug_assert!(law.residual(sys).is_zero());
    Ok(QuasiNoetherDerivation {
        law,
        xi,
        gamma,
        noether_fluxes,
    })
}

/// Turns `D_i K^i = Σ c^{aJ} D_J Δ_a` into characteristic form:
/// `ξ^a = Σ_J (-D)_J c^{aJ}` and `J^i = K^i - Σ Φ^i_J[Δ_a, c^{aJ}]`.
pub(crate) fn integrate_by_parts(
    sys: &DifferentialSystem,
    c: &IdealDecomposition,
    fluxes: Vec<Expr>,
) -> ConservationLaw {
    let p = sys.space().p();
    let mut xi = vec![Vec::new(); sys.len()];
    let mut corrections = vec![Vec::new(); p];
    for ((a, j), coeff) in &c.coefficients {
        xi[*a].push(adjoint_derivative_multi(coeff, j));
        for (i, phi) in ibp_phi(sys.equation(*a), coeff, j, p)
            .into_iter()
            .enumerate()
        {
            corrections[i].push(phi);
        }
    }
    let fluxes = fluxes
        .iter()
        .zip(&corrections)
        .map(|(k, corr)| k.sub(&Expr::sum(corr.iter())))
        .collect();
    let characteristic = xi.iter().map(|parts| Expr::sum(parts.iter())).collect();
    ConservationLaw::new(fluxes, characteristic)
}

/// Noether's first theorem for `L`: fluxes `M^i - R^i_α L`, characteristic
/// `α` against `Δ_q = E_{u^q} L`. `M` is reconstructed when not supplied.
pub fn first_theorem_variational(
    lagrangian: &Expr,
    alpha: &EvolutionaryVectorField,
    m: Option<Vec<Expr>>,
    p: usize,
) -> Result<ConservationLaw, EngineError> {
    let variation = prolong_apply(alpha, lagrangian);
    let eulers: Vec<Expr> = (0..alpha.components.len())
        .map(|q| euler(&variation, DepId(q as u8)))
        .collect();
    if eulers.iter().any(|e| !e.is_zero()) {
        return Err(EngineError::NotVariationalSymmetry(eulers));
    }
    let m = match m {
        Some(m) => {
            if m.len() != p {
                return Err(EngineError::Shape("one flux per independent variable"));
            }
            let diff = divergence(&m).sub(&variation);
            if !diff.is_zero() {
                return Err(EngineError::FluxMismatch(diff));
            }
            m
        }
        None => divergence_reconstruct(&variation, p, alpha.components.len())?,
    };
    let r = noether_r_all(alpha, p, lagrangian);
    let fluxes = m.iter().zip(&r).map(|(a, b)| a.sub(b)).collect();
    Ok(ConservationLaw::new(fluxes, alpha.components.clone()))
}

/// Characteristic form of a flux tuple whose divergence vanishes on-shell.
pub fn characteristic_from_fluxes(
    fluxes: &[Expr],
    sys: &DifferentialSystem,
) -> Result<ConservationLaw, EngineError> {
    if fluxes.len() != sys.space().p() {
        return Err(EngineError::Shape("one flux per independent variable"));
    }
    let dec = ideal_decompose(&divergence(fluxes), sys)?;
    if !dec.remainder.is_zero() {
        return Err(EngineError::NotConserved(dec.remainder));
    }
    Ok(integrate_by_parts(sys, &dec, fluxes.to_vec()))
}

/// Characteristic form of `D_i K^i = Σ d^{aK} D_K Δ_a` for a stated
/// right-hand side.
pub fn law_from_combination(
    sys: &DifferentialSystem,
    fluxes: &[Expr],
    rhs: &DeltaCombination,
) -> Result<ConservationLaw, EngineError> {
    if fluxes.len() != sys.space().p() {
        return Err(EngineError::Shape("one flux per independent variable"));
    }
    let diff = divergence(fluxes).sub(&rhs.expand(sys));
    if !diff.is_zero() {
        return Err(EngineError::FluxMismatch(diff));
    }
    let terms = rhs
        .terms(sys)
        .ok_or(EngineError::Shape("a combination linear in the equations"))?;
    let mut dec = IdealDecomposition::default();
    for (a, k, c) in terms {
        dec.add_coefficient(a, k, c);
    }
    Ok(integrate_by_parts(sys, &dec, fluxes.to_vec()))
}

/// Whether two characteristics differ by something vanishing on-shell.
pub fn equivalent_characteristics(
    sys: &DifferentialSystem,
    a: &[Expr],
    b: &[Expr],
) -> Result<bool, EngineError> {
    for (x, y) in a.iter().zip(b) {
        if !super::on_shell_reduce(&x.sub(y), sys)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(a.len() == b.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Space;

    #[test]
    fn wave_translation_law() {
        let s = Space::new(["t", "x"], ["u"]).unwrap();
        let l = s.parse("u_t^2/2 - u_x^2/2").unwrap();
        let alpha = EvolutionaryVectorField::new(vec![s.parse("u_x").unwrap()]);
        let law = first_theorem_variational(&l, &alpha, None, 2).unwrap();
        let e = euler(&l, DepId(0));
        assert_eq!(e, s.parse("u_xx - u_tt").unwrap());
        let sys = DifferentialSystem::new(s.clone(), vec![e]).unwrap();
        assert!(law.is_valid(&sys));
        assert_eq!(law.characteristic, vec![s.parse("u_x").unwrap()]);

        // The same law written against u_tt - u_xx flips every flux.
        let flipped =
            DifferentialSystem::new(s.clone(), vec![s.parse("u_tt - u_xx").unwrap()]).unwrap();
        let expected = ConservationLaw::new(
            vec![
                s.parse("u_t*u_x").unwrap(),
                s.parse("-u_t^2/2 - u_x^2/2").unwrap(),
            ],
            vec![s.parse("u_x").unwrap()],
        );
        assert!(expected.is_valid(&flipped));
        for (a, b) in law.fluxes.iter().zip(&expected.fluxes) {
            assert_eq!(a, &b.neg());
        }
    }
}
