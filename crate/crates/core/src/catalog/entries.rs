use crate::engine::{law_from_combination, ConservationLaw, DifferentialSystem};
use crate::expr::Expr;
use crate::jet::EvolutionaryVectorField;

use super::*;

/// A named system with the objects that go with it.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub summary: String,
    pub system: DifferentialSystem,
    pub lagrangian: Option<Expr>,
    /// Alternative Lagrangian `A` for the quasi-Noether construction.
    pub alternative: Option<Expr>,
    /// Multipliers `β` with `A = β^a Δ_a`.
    pub multipliers: Option<Vec<Expr>>,
    pub symmetries: Vec<(String, EvolutionaryVectorField)>,
    /// Fluxes `M` with `D_i M^i = X_α L`, per symmetry.
    pub variation_fluxes: Vec<(String, Vec<Expr>)>,
    pub laws: Vec<(String, ConservationLaw)>,
}

impl CatalogEntry {
    pub fn new(
        name: impl Into<String>,
        summary: impl Into<String>,
        system: DifferentialSystem,
    ) -> Self {
        CatalogEntry {
            name: name.into(),
            summary: summary.into(),
            system,
            lagrangian: None,
            alternative: None,
            multipliers: None,
            symmetries: Vec::new(),
            variation_fluxes: Vec::new(),
            laws: Vec::new(),
        }
    }

    pub fn symmetry(&self, name: &str) -> Option<&EvolutionaryVectorField> {
        self.symmetries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
    }

    pub fn law(&self, name: &str) -> Option<&ConservationLaw> {
        self.laws.iter().find(|(n, _)| n == name).map(|(_, l)| l)
    }
}

pub const CATALOG_NAMES: [&str; 8] = [
    "kdv",
    "liouville",
    "transonic",
    "vorticity-generic",
    "vorticity-euler",
    "vorticity-ns",
    "curl-potential",
    "ertel",
];

pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    Some(match name {
        "kdv" => {
            let sys = make_kdv();
            let mut e = CatalogEntry::new(
                "kdv",
                "Korteweg-de Vries equation with its scaling symmetry",
                sys.clone(),
            );
            e.alternative = Some(sys.equation(0).clone());
            e.multipliers = Some(vec![Expr::one()]);
            e.symmetries.push(("scaling".into(), kdv_scaling(&sys)));
            e.laws.push(("scaling".into(), kdv_scaling_law(&sys)));
            e
        }
        "liouville" => {
            let sys = make_liouville();
            let mut e = CatalogEntry::new(
                "liouville",
                "Liouville equation with the f(t) reparametrization family",
                sys.clone(),
            );
            e.lagrangian = Some(liouville_lagrangian(&sys));
            e.symmetries
                .push(("f-family".into(), liouville_symmetry(&sys)));
            e.variation_fluxes
                .push(("f-family".into(), liouville_variation_fluxes(&sys)));
            e.laws.push(("f-family".into(), liouville_law(&sys)));
            e
        }
        "transonic" => {
            let sys = make_transonic();
            let mut e = CatalogEntry::new(
                "transonic",
                "Non-stationary transonic gas flow with an f(t) family",
                sys.clone(),
            );
            e.lagrangian = Some(transonic_lagrangian(&sys));
            e.symmetries
                .push(("f-family".into(), transonic_symmetry(&sys)));
            e.laws.push(("f-family".into(), transonic_law(&sys)));
            e
        }
        "vorticity-generic" | "vorticity-ns" => {
            let (vs, summary, n) = if name == "vorticity-ns" {
                (
                    make_vorticity_ns(),
                    "Navier-Stokes vorticity equations",
                    "vorticity-ns",
                )
            } else {
                (
                    make_vorticity_generic(),
                    "Vorticity system with an unspecified vector M",
                    "vorticity-generic",
                )
            };
            let f = vs.space().f("F", &[]);
            let mut e = CatalogEntry::new(n, summary, vs.system.clone());
            e.laws.push(("F-family".into(), vs.cl_family(&f)));
            e
        }
        "vorticity-euler" => {
            let vs = make_vorticity_euler();
            let g = euler_potentials(&vs);
            let mut e = CatalogEntry::new(
                "vorticity-euler",
                "Euler vorticity system with velocity divergence and its g-families",
                vs.system.clone(),
            );
            e.alternative = Some(vs.system.equation(0).clone());
            e.symmetries.push((
                "g-family".into(),
                euler_vorticity_field(&vs, &g, SymmetryReading::Corrected),
            ));
            e.symmetries.push((
                "g-family-literal".into(),
                euler_vorticity_field(&vs, &g, SymmetryReading::Literal),
            ));
            e.laws
                .push(("F-family".into(), vs.cl_family(&vs.space().f("F", &[]))));
            e
        }
        "curl-potential" => {
            let cp = make_curl_potential();
            let f = cp.space().f("F", &[]);
            let mut e = CatalogEntry::new(
                "curl-potential",
                "Variational form of the viscous vorticity equation with adjoint variables",
                cp.system.clone(),
            );
            e.lagrangian = Some(cp.lagrangian.clone());
            e.symmetries.push(("gauge-u".into(), cp.gauge_u(&f)));
            e.symmetries.push(("gauge-v".into(), cp.gauge_v(&f)));
            e.laws.push(("F-family".into(), cp.gauge_law(&f)));
            e
        }
        "ertel" => {
            let (vs, aux) = make_ertel();
            let sys = vs.system.union(&aux).expect("same space");
            let law = law_from_combination(&sys, &ertel_fluxes(&vs), &ertel_rhs(&vs, &sys))
                .expect("Ertel identity");
            let mut e = CatalogEntry::new(
                "ertel",
                "Euler vorticity equations with an advected scalar",
                sys,
            );
            e.laws.push(("ertel".into(), law));
            let family = vs.cl_family(&vs.space().u("psi", &[]));
            let mut xi = family.characteristic;
            xi.push(Expr::zero());
            e.laws
                .push(("psi-family".into(), ConservationLaw::new(family.fluxes, xi)));
            e
        }
        _ => return None,
    })
}
