//! Vorticity-type systems `ω_t + ∇×M = 0`, `∇·ω = 0` and their
//! infinite families.

use crate::engine::{
    is_symmetry, ConservationLaw, DeltaCombination, DifferentialSystem, EngineError,
};
use crate::expr::{Expr, JetAtom, MultiIndex, Space};
use crate::jet::{euler, total_derivative, EvolutionaryVectorField};

use super::vector::{grad, VectorExpr};

const VARS: [&str; 4] = ["t", "x", "y", "z"];

/// A vorticity system together with the vector `M` it was built from.
#[derive(Clone, Debug)]
pub struct VorticitySystem {
    pub system: DifferentialSystem,
    pub m: VectorExpr,
}

fn space(deps: &[&str], params: &[&str], functions: &[&str]) -> Space {
    let mut s = Space::new(VARS, deps.iter().copied()).expect("static declaration");
    for p in params {
        s = s.with_parameter(*p).expect("static declaration");
    }
    for f in functions {
        s = s.with_function(*f, VARS).expect("static declaration");
    }
    s
}

/// The vorticity `w1, w2, w3` of a space.
pub fn omega(space: &Space) -> VectorExpr {
    VectorExpr::dependent(space, "w")
}

/// `Δ_i = ω^i_t + (∇×M)_i`, `Δ_4 = ∇·ω`, followed by `extra`. Ranked by
/// `ω^i_t` and `ω^3_z`; `extra` comes with its own leading atoms.
pub fn make_vorticity(
    space: Space,
    m: &VectorExpr,
    extra: Vec<(Expr, JetAtom)>,
) -> VorticitySystem {
    let w = omega(&space);
    let t = space.var_id("t").expect("vorticity spaces declare t");
    let curl = m.curl(&space);
    let mut eqs: Vec<Expr> = (0..3)
        .map(|i| total_derivative(&w.0[i], t).add(&curl.0[i]))
        .collect();
    eqs.push(w.div(&space));
    let mut lead: Vec<_> = (1..=3)
        .map(|i| space.jet_atom(&format!("w{i}"), &["t"]))
        .collect();
    lead.push(space.jet_atom("w3", &["z"]));
    for (e, l) in extra {
        eqs.push(e);
        lead.push(l);
    }
    let system =
        DifferentialSystem::with_ranking(space, eqs, lead).expect("leading atoms are linear");
    VorticitySystem {
        system,
        m: m.clone(),
    }
}

/// `M` an unspecified vector `M1, M2, M3` of dependent variables.
pub fn make_vorticity_generic() -> VorticitySystem {
    let s = space(&["w1", "w2", "w3", "M1", "M2", "M3"], &[], &["F"]);
    let m = VectorExpr::dependent(&s, "M");
    make_vorticity(s, &m, Vec::new())
}

/// Euler: `M = ω×u` with the companion `Δ_5 = ∇·u` (ranked by `u3_z`).
/// Declares `F`, the potentials `g1, g2, g3` and a scalar `f`.
pub fn make_vorticity_euler() -> VorticitySystem {
    let s = space(
        &["w1", "w2", "w3", "u1", "u2", "u3"],
        &[],
        &["F", "g1", "g2", "g3", "f"],
    );
    let u = VectorExpr::dependent(&s, "u");
    let m = omega(&s).cross(&u);
    let d5 = u.div(&s);
    let lead = s.jet_atom("u3", &["z"]);
    make_vorticity(s, &m, vec![(d5, lead)])
}

/// Navier-Stokes: `M = ω×u - ν∇²u`.
pub fn make_vorticity_ns() -> VorticitySystem {
    let s = space(&["w1", "w2", "w3", "u1", "u2", "u3"], &["nu"], &["F"]);
    let u = VectorExpr::dependent(&s, "u");
    let m = omega(&s)
        .cross(&u)
        .sub(&u.laplacian(&s).scale(&s.param("nu")));
    make_vorticity(s, &m, Vec::new())
}

impl VorticitySystem {
    pub fn space(&self) -> &Space {
        self.system.space()
    }

    /// `∂_t(ω·∇F) + ∇·(M×∇F - F_t ω) = ∇F·Δ⃗ - F_t Δ_4`. `F` may be any
    /// expression, an arbitrary function or a dependent variable.
    pub fn cl_family(&self, f: &Expr) -> ConservationLaw {
        let s = self.space();
        let w = omega(s);
        let gf = grad(s, f);
        let ft = total_derivative(f, self.system.var("t"));
        let spatial = self.m.cross(&gf).sub(&w.scale(&ft));
        let mut fluxes = vec![w.dot(&gf)];
        fluxes.extend(spatial.0);
        let mut xi: Vec<Expr> = gf.0.to_vec();
        xi.push(ft.neg());
        xi.resize(self.system.len(), Expr::zero());
        ConservationLaw::new(fluxes, xi)
    }
}

pub fn vorticity_cl_family(vs: &VorticitySystem, f: &Expr) -> ConservationLaw {
    vs.cl_family(f)
}

/// Two readings of the velocity component of the Euler symmetry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryReading {
    /// `β^i = ∂_t f^i + u^j ∂_j f^i - f^j ∂_j u^i`.
    Corrected,
    /// `β^i = ∂_t f^i + u^j f ∂_j f^i - f^j ∂_j u^i` with a scalar `f`.
    Literal,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("neither reading of the field is a symmetry")]
    SymmetryCheckFailed,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// `f^i = ε^{ijk} ∂_j g^k`, divergence-free by construction.
pub fn solenoidal(space: &Space, g: &VectorExpr) -> VectorExpr {
    g.curl(space)
}

/// `α^i = ω^j ∂_j f^i - f^j ∂_j ω^i` and `β^i` in the chosen reading, as a
/// field over `(ω, u)`.
pub fn euler_vorticity_field(
    vs: &VorticitySystem,
    g: &VectorExpr,
    reading: SymmetryReading,
) -> EvolutionaryVectorField {
    let s = vs.space();
    let f = solenoidal(s, g);
    let w = omega(s);
    let u = VectorExpr::dependent(s, "u");
    let ax: Vec<_> = ["x", "y", "z"].iter().map(|n| vs.system.var(n)).collect();
    let t = vs.system.var("t");
    // a·∇ b
    let advect = |a: &VectorExpr, b: &VectorExpr| {
        VectorExpr([0, 1, 2].map(|i| {
            let parts: Vec<Expr> = (0..3)
                .map(|j| a.0[j].mul(&total_derivative(&b.0[i], ax[j])))
                .collect();
            Expr::sum(parts.iter())
        }))
    };
    let alpha = advect(&w, &f).sub(&advect(&f, &w));
    let transport = match reading {
        SymmetryReading::Corrected => advect(&u, &f),
        SymmetryReading::Literal => advect(&u, &f).scale(&s.f("f", &[])),
    };
    let beta = f.derivative(t).add(&transport).sub(&advect(&f, &u));
    let mut comps = alpha.0.to_vec();
    comps.extend(beta.0);
    EvolutionaryVectorField::new(comps)
}

/// The potentials `g1, g2, g3` declared by [`make_vorticity_euler`].
pub fn euler_potentials(vs: &VorticitySystem) -> VectorExpr {
    let s = vs.space();
    VectorExpr::new(s.f("g1", &[]), s.f("g2", &[]), s.f("g3", &[]))
}

/// Checks both readings with [`is_symmetry`] and returns the passing one.
pub fn euler_vorticity_symmetries(
    vs: &VorticitySystem,
    g: &VectorExpr,
) -> Result<(EvolutionaryVectorField, SymmetryReading), CatalogError> {
    let mut passing = None;
    for reading in [SymmetryReading::Corrected, SymmetryReading::Literal] {
        let field = euler_vorticity_field(vs, g, reading);
        if is_symmetry(&vs.system, &field)?.holds && passing.is_none() {
            passing = Some((field, reading));
        }
    }
    passing.ok_or(CatalogError::SymmetryCheckFailed)
}

/// Ertel's setting: the Euler vorticity system over `(ω, u, ψ)` and the
/// advection constraint `ψ_t + u·∇ψ = 0` ranked by `ψ_t`.
pub fn make_ertel() -> (VorticitySystem, DifferentialSystem) {
    let s = space(&["w1", "w2", "w3", "u1", "u2", "u3", "psi"], &[], &[]);
    let u = VectorExpr::dependent(&s, "u");
    let m = omega(&s).cross(&u);
    let psi = s.u("psi", &[]);
    let advection = s.u("psi", &["t"]).add(&u.dot(&grad(&s, &psi)));
    let aux = DifferentialSystem::with_ranking(
        s.clone(),
        vec![advection],
        vec![s.jet_atom("psi", &["t"])],
    )
    .and_then(|a| a.with_names(&["Psi"]))
    .expect("psi_t is linear");
    (make_vorticity(s, &m, Vec::new()), aux)
}

/// `(ω·∇ψ, (ω·∇ψ) u)`.
pub fn ertel_fluxes(vs: &VorticitySystem) -> Vec<Expr> {
    let s = vs.space();
    let q = omega(s).dot(&grad(s, &s.u("psi", &[])));
    let mut out = vec![q.clone()];
    out.extend(VectorExpr::dependent(s, "u").scale(&q).0);
    out
}

/// `∇·(ψΔ⃗) - D_t(ψΔ_4) + ∇·(Ψω)` over `sys`, the union of the Ertel
/// vorticity system and its constraint `Ψ`.
pub fn ertel_rhs(vs: &VorticitySystem, sys: &DifferentialSystem) -> DeltaCombination {
    let s = vs.space();
    let psi = s.u("psi", &[]);
    let e = |a: usize| sys.placeholder(a, &MultiIndex::empty());
    let flux = VectorExpr::new(e(0), e(1), e(2))
        .scale(&psi)
        .add(&omega(s).scale(&e(4)));
    let t = sys.var("t");
    DeltaCombination::new(flux.div(s).sub(&total_derivative(&psi.mul(&e(3)), t)))
}

/// The Lagrangian `-u·∂_t(∇×v) + M·∇×v` of the curl-potential system.
pub fn curl_potential_lagrangian(space: &Space, m: &VectorExpr) -> Expr {
    let u = VectorExpr::dependent(space, "u");
    let cv = VectorExpr::dependent(space, "v").curl(space);
    let t = space.var_id("t").expect("curl-potential spaces declare t");
    m.dot(&cv).sub(&u.dot(&cv.derivative(t)))
}

/// Variational form of a vorticity system with `ω = ∇×u`.
#[derive(Clone, Debug)]
pub struct CurlPotential {
    /// `E_{u^a} L` (named `Eu1..Eu3`) then `E_{v^a} L = Δ_a`.
    pub system: DifferentialSystem,
    pub lagrangian: Expr,
    pub m: VectorExpr,
}

/// Builds the system for `M = m(space, ∇×u)` over `(u, v)`, declaring `ν`
/// and `F`.
pub fn make_curl_potential_with(
    m: impl FnOnce(&Space, &VectorExpr) -> VectorExpr,
) -> CurlPotential {
    let s = space(&["u1", "u2", "u3", "v1", "v2", "v3"], &["nu"], &["F"]);
    let w = VectorExpr::dependent(&s, "u").curl(&s);
    let m = m(&s, &w);
    let lagrangian = curl_potential_lagrangian(&s, &m);
    let eqs: Vec<Expr> = s.deps().map(|q| euler(&lagrangian, q)).collect();
    let system = DifferentialSystem::new(s, eqs)
        .and_then(|sys| sys.with_names(&["Eu1", "Eu2", "Eu3", "Delta1", "Delta2", "Delta3"]))
        .expect("Euler-Lagrange equations are linear");
    CurlPotential {
        system,
        lagrangian,
        m,
    }
}

/// `M = ν∇×ω`, the viscous term in vorticity form.
pub fn make_curl_potential() -> CurlPotential {
    make_curl_potential_with(|s, w| w.curl(s).scale(&s.param("nu")))
}

impl CurlPotential {
    pub fn space(&self) -> &Space {
        self.system.space()
    }

    /// `Δ⃗ = ∂_t(∇×u) + ∇×M`.
    pub fn equations(&self) -> VectorExpr {
        let s = self.space();
        let w = VectorExpr::dependent(s, "u").curl(s);
        w.derivative(self.system.var("t")).add(&self.m.curl(s))
    }

    /// `u → u + ∇F`.
    pub fn gauge_u(&self, f: &Expr) -> EvolutionaryVectorField {
        let mut c = grad(self.space(), f).0.to_vec();
        c.extend(VectorExpr::zero().0);
        EvolutionaryVectorField::new(c)
    }

    /// `v → v + ∇F`.
    pub fn gauge_v(&self, f: &Expr) -> EvolutionaryVectorField {
        let mut c = VectorExpr::zero().0.to_vec();
        c.extend(grad(self.space(), f).0);
        EvolutionaryVectorField::new(c)
    }

    /// `∂_t(∇F·∇×u) + ∇·(M×∇F + ∇F_t×u) = ∇F·Δ⃗`.
    pub fn gauge_law(&self, f: &Expr) -> ConservationLaw {
        let s = self.space();
        let u = VectorExpr::dependent(s, "u");
        let gf = grad(s, f);
        let t = self.system.var("t");
        let mut fluxes = vec![gf.dot(&u.curl(s))];
        fluxes.extend(self.m.cross(&gf).add(&gf.derivative(t).cross(&u)).0);
        let mut xi = vec![Expr::zero(); 3];
        xi.extend(gf.0);
        ConservationLaw::new(fluxes, xi)
    }
}
