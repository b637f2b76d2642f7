//! Scalar equations in two and three independent variables.

use crate::engine::{ConservationLaw, DifferentialSystem};
use crate::expr::{Expr, Space};
use crate::jet::{total_derivative, EvolutionaryVectorField};

fn parse(s: &Space, text: &str) -> Expr {
    s.parse(text)
        .unwrap_or_else(|e| panic!("catalog expression `{text}`: {e}"))
}

fn fields(s: &Space, texts: &[&str]) -> Vec<Expr> {
    texts.iter().map(|t| parse(s, t)).collect()
}

/// `u_t + u u_x + u_xxx = 0`, ranked by `u_t`.
pub fn make_kdv() -> DifferentialSystem {
    let s = Space::new(["t", "x"], ["u"]).expect("static declaration");
    let eq = parse(&s, "u_t + u*u_x + u_xxx");
    let lead = s.jet_atom("u", &["t"]);
    DifferentialSystem::with_ranking(s, vec![eq], vec![lead]).expect("u_t is linear")
}

/// `X = (2u + x u_x + 3t u_t) ∂_u`.
pub fn kdv_scaling(sys: &DifferentialSystem) -> EvolutionaryVectorField {
    EvolutionaryVectorField::new(fields(sys.space(), &["2*u + x*u_x + 3*t*u_t"]))
}

/// The scaling law in characteristic form:
/// `D_t[α - 3tΔ] + D_x[uα + D_x^2 α - xΔ] = Δ`.
pub fn kdv_scaling_law(sys: &DifferentialSystem) -> ConservationLaw {
    let s = sys.space();
    let alpha = "(2*u + x*u_x + 3*t*u_t)";
    let delta = "(u_t + u*u_x + u_xxx)";
    let density = format!("{alpha} - 3*t*{delta}");
    let flux = format!("u*{alpha} + 2*u_xx + x*u_xxx + 2*u_xx + 3*t*u_txx - x*{delta}");
    ConservationLaw::new(vec![parse(s, &density), parse(s, &flux)], vec![Expr::one()])
}

/// `u_tx - e^u = 0` with an arbitrary function `f(t)`.
pub fn make_liouville() -> DifferentialSystem {
    let s = Space::new(["t", "x"], ["u"])
        .and_then(|s| s.with_function("f", ["t"]))
        .expect("static declaration");
    let eq = parse(&s, "u_tx - exp(u)");
    let lead = s.jet_atom("u", &["t", "x"]);
    DifferentialSystem::with_ranking(s, vec![eq], vec![lead]).expect("u_tx is linear")
}

/// `L = -u_t u_x / 2 - e^u`.
pub fn liouville_lagrangian(sys: &DifferentialSystem) -> Expr {
    parse(sys.space(), "-u_t*u_x/2 - exp(u)")
}

/// `X = (f' + f u_t) ∂_u`.
pub fn liouville_symmetry(sys: &DifferentialSystem) -> EvolutionaryVectorField {
    EvolutionaryVectorField::new(fields(sys.space(), &["f_t + f*u_t"]))
}

/// Fluxes with `D_i M^i = X L`: `M = (f L, -f'' u / 2)`.
pub fn liouville_variation_fluxes(sys: &DifferentialSystem) -> Vec<Expr> {
    fields(sys.space(), &["f*(-u_t*u_x/2 - exp(u))", "-f_tt*u/2"])
}

/// `½D_t[u_x f' - 2f e^u] + ½D_x[(f' + f u_t) u_t - f'' u] = (f' + f u_t) Δ`.
pub fn liouville_law(sys: &DifferentialSystem) -> ConservationLaw {
    let s = sys.space();
    ConservationLaw::new(
        fields(
            s,
            &["(u_x*f_t - 2*f*exp(u))/2", "((f_t + f*u_t)*u_t - f_tt*u)/2"],
        ),
        fields(s, &["f_t + f*u_t"]),
    )
}

/// `2u_xt + u_x u_xx - u_yy = 0`, ranked by `u_yy`, with `f(t)`.
pub fn make_transonic() -> DifferentialSystem {
    let s = Space::new(["t", "x", "y"], ["u"])
        .and_then(|s| s.with_function("f", ["t"]))
        .expect("static declaration");
    let eq = parse(&s, "2*u_xt + u_x*u_xx - u_yy");
    let lead = s.jet_atom("u", &["y", "y"]);
    DifferentialSystem::with_ranking(s, vec![eq], vec![lead]).expect("u_yy is linear")
}

/// `L = -u_x u_t - u_x^3/6 + u_y^2/2`.
pub fn transonic_lagrangian(sys: &DifferentialSystem) -> Expr {
    parse(sys.space(), "-u_x*u_t - u_x^3/6 + u_y^2/2")
}

const TRANSONIC_XI: &str = "(2*x*f_t + 2*y^2*f_tt - f*u_x)";

/// `X = ξ_f ∂_u` with `ξ_f = 2x f' + 2y^2 f'' - f u_x`.
pub fn transonic_symmetry(sys: &DifferentialSystem) -> EvolutionaryVectorField {
    EvolutionaryVectorField::new(fields(sys.space(), &[TRANSONIC_XI]))
}

/// The reference density and fluxes with characteristic `ξ_f`.
pub fn transonic_law(sys: &DifferentialSystem) -> ConservationLaw {
    let s = sys.space();
    let xi = TRANSONIC_XI;
    let l = "(-u_x*u_t - u_x^3/6 + u_y^2/2)";
    let mt = "f*(-u_x^2) + f_t*(2*x*u_x - 2*u) + f_tt*(2*y^2*u_x)".to_string();
    let mx = format!("-{l}*f - 2*x*u*f_tt - 2*y^2*u*f_ttt + {xi}*(u_t + u_x^2/2)");
    let my = format!("4*y*u*f_tt - {xi}*u_y");
    ConservationLaw::new(
        vec![parse(s, &mt), parse(s, &mx), parse(s, &my)],
        vec![parse(s, xi)],
    )
}

/// The reference split `M^t = Q + D_x T^x + D_y T^y`; returns `(T^x, T^y, Q)`
/// with `Q = (2x f + 2y^2 f') Δ - 2y^2 f D_tΔ`.
pub fn transonic_density_split(sys: &DifferentialSystem) -> (Expr, Expr, Expr) {
    let s = sys.space();
    let tx = parse(
        s,
        "f*(-4*x*u_t + 4*y^2*u_tt + 2*y^2*u_x*u_xt - x*u_x^2) + f_t*(2*x*u - 4*y^2*u_t - y^2*u_x^2) + f_tt*(2*y^2*u)",
    );
    let ty = parse(
        s,
        "f*(2*x*u_y + 4*y*u_t - 2*y^2*u_yt) + f_t*(2*y^2*u_y - 4*y*u)",
    );
    let d = sys.equation(0);
    let q = parse(s, "2*x*f + 2*y^2*f_t")
        .mul(d)
        .sub(&parse(s, "2*y^2*f").mul(&total_derivative(d, sys.var("t"))));
    (tx, ty, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::DepId;
    use crate::jet::{divergence, euler};

    #[test]
    fn lagrangians_recover_equations() {
        let l = make_liouville();
        assert_eq!(&euler(&liouville_lagrangian(&l), DepId(0)), l.equation(0));
        let t = make_transonic();
        assert_eq!(&euler(&transonic_lagrangian(&t), DepId(0)), t.equation(0));
    }

    #[test]
    fn reference_laws_hold_off_shell() {
        let k = make_kdv();
        assert!(kdv_scaling_law(&k).residual(&k).is_zero());
        let l = make_liouville();
        assert!(liouville_law(&l).residual(&l).is_zero());
    }

    #[test]
    fn liouville_variation_fluxes_match() {
        let l = make_liouville();
        let var = crate::jet::prolong_apply(&liouville_symmetry(&l), &liouville_lagrangian(&l));
        assert_eq!(divergence(&liouville_variation_fluxes(&l)), var);
    }
}
