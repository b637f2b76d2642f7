//! Reference checks for the worked systems. Expected values are typed in
//! from closed-form formulas, independently of the catalog where possible.

use noether::catalog::*;
use noether::engine::*;
use noether::expr::{DepId, EvalError, Expr, MultiIndex, Space, VarId};
use noether::jet::{divergence, euler, total_derivative};
use noether::oracle::{
    verify_conservation_law, verify_divergence, verify_sum, OracleConfig, OracleReport,
};

#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub oracle: bool,
    pub ok: bool,
    pub detail: String,
}

#[derive(Default)]
pub struct Checks(pub Vec<Check>);

impl Checks {
    pub fn truth(&mut self, label: &str, ok: bool, detail: impl Into<String>) {
        self.0.push(Check {
            label: label.into(),
            oracle: false,
            ok,
            detail: detail.into(),
        });
    }

    pub fn zero(&mut self, label: &str, s: &Space, e: &Expr) {
        let detail = if e.is_zero() {
            String::new()
        } else {
            format!("residual {}", s.render(e))
        };
        self.truth(label, e.is_zero(), detail);
    }

    pub fn equal(&mut self, label: &str, s: &Space, got: &Expr, want: &Expr) {
        let detail = if got == want {
            String::new()
        } else {
            format!("got {} want {}", s.render(got), s.render(want))
        };
        self.truth(label, got == want, detail);
    }

    pub fn oracle(&mut self, label: &str, r: Result<OracleReport, EvalError>) {
        let (ok, detail) = match r {
            Ok(o) => (
                o.passed(),
                format!("max relative residual {:.2e}", o.max_residual),
            ),
            Err(e) => (false, e.to_string()),
        };
        self.0.push(Check {
            label: label.into(),
            oracle: true,
            ok,
            detail,
        });
    }

    pub fn symbolic(&self) -> impl Iterator<Item = &Check> {
        self.0.iter().filter(|c| !c.oracle)
    }

    pub fn numeric(&self) -> impl Iterator<Item = &Check> {
        self.0.iter().filter(|c| c.oracle)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.0.iter().filter(|c| !c.ok).collect()
    }

    pub fn assert_all(&self) {
        let f = self.failures();
        assert!(f.is_empty(), "failed checks: {f:#?}");
    }
}

pub fn cfg() -> OracleConfig {
    OracleConfig::default()
}

fn p(s: &Space, text: &str) -> Expr {
    s.parse(text).unwrap()
}

fn placeholder(sys: &DifferentialSystem, a: usize, vars: &[&str]) -> Expr {
    sys.placeholder(a, &MultiIndex::from_vars(vars.iter().map(|v| sys.var(v))))
}

/// Reference KdV law: `D_t[α] + D_x[uα] + D_x^3 α = Δ + D_t(3tΔ) + D_x(xΔ)`
/// in characteristic form; `sign` multiplies the `Δ` corrections.
pub fn reference_kdv_law(sys: &DifferentialSystem, sign: i64) -> ConservationLaw {
    let s = sys.space();
    let alpha = p(s, "2*u + 3*t*u_t + x*u_x");
    let delta = sys.equation(0);
    let x = sys.var("x");
    let c = Expr::integer(sign);
    let density = alpha.sub(&p(s, "3*t").mul(delta).mul(&c));
    let flux = p(s, "u")
        .mul(&alpha)
        .add(&total_derivative(&total_derivative(&alpha, x), x))
        .sub(&p(s, "x").mul(delta).mul(&c));
    ConservationLaw::new(vec![density, flux], vec![Expr::one()])
}

pub fn kdv() -> Checks {
    let mut c = Checks::default();
    let sys = make_kdv();
    let s = sys.space();
    c.equal(
        "system is u_t + u u_x + u_xxx",
        s,
        sys.equation(0),
        &p(s, "u_t + u*u_x + u_xxx"),
    );
    let alpha = kdv_scaling(&sys);
    let delta = sys.equation(0).clone();
    match first_theorem_quasi(&sys, &delta, &alpha, Some(&[Expr::one()])) {
        Ok(d) => {
            c.truth(
                "extracted characteristic is exactly 1",
                d.law.characteristic == vec![Expr::one()],
                format!(
                    "{:?}",
                    d.law
                        .characteristic
                        .iter()
                        .map(|e| s.render(e))
                        .collect::<Vec<_>>()
                ),
            );
            c.zero(
                "derived law has zero off-shell residual",
                s,
                &d.law.residual(&sys),
            );
            let reference = reference_kdv_law(&sys, 1);
            c.zero(
                "reference law has zero off-shell residual",
                s,
                &reference.residual(&sys),
            );
            let diff: Vec<Expr> = d
                .law
                .fluxes
                .iter()
                .zip(&reference.fluxes)
                .map(|(a, b)| a.sub(b))
                .collect();
            c.zero(
                "derived and reference fluxes differ by a null divergence",
                s,
                &divergence(&diff),
            );
            c.oracle(
                "oracle: derived law",
                verify_conservation_law(&d.law, &sys, &cfg()),
            );
            c.oracle(
                "oracle: reference law",
                verify_conservation_law(&reference, &sys, &cfg()),
            );
        }
        Err(e) => c.truth("quasi-Noether construction succeeds", false, e.to_string()),
    }
    c
}

pub fn liouville() -> Checks {
    let mut c = Checks::default();
    let sys = make_liouville();
    let s = sys.space();
    let l = p(s, "-u_t*u_x/2 - exp(u)");
    let delta = p(s, "u_tx - exp(u)");
    c.equal("E_u(L) = u_tx - e^u", s, &euler(&l, DepId(0)), &delta);
    c.equal("catalog Lagrangian", s, &liouville_lagrangian(&sys), &l);

    let xi = p(s, "f_t + f*u_t");
    let reference = ConservationLaw::new(
        vec![
            p(s, "(u_x*f_t - 2*f*exp(u))/2"),
            p(s, "((f_t + f*u_t)*u_t - f_tt*u)/2"),
        ],
        vec![xi.clone()],
    );
    c.zero(
        "f(t) family law has zero off-shell residual",
        s,
        &reference.residual(&sys),
    );
    c.oracle(
        "oracle: f(t) family law",
        verify_conservation_law(&reference, &sys, &cfg()),
    );
    let m = vec![p(s, "f*(-u_t*u_x/2 - exp(u))"), p(s, "-f_tt*u/2")];
    match first_theorem_variational(&l, &liouville_symmetry(&sys), Some(m), 2) {
        Ok(law) => c.truth(
            "variational route reproduces the reference law",
            law == reference,
            "",
        ),
        Err(e) => c.truth(
            "variational route reproduces the reference law",
            false,
            e.to_string(),
        ),
    }

    match subset_variable_theorem(&reference, &sys, "f") {
        Ok(out) => {
            let fluxes = vec![Expr::zero(), p(s, "u_t^2/2 - u_tt")];
            c.truth(
                "function-free fluxes are (0, u_t^2/2 - u_tt)",
                out.fluxes == fluxes,
                format!(
                    "{:?}",
                    out.fluxes.iter().map(|e| s.render(e)).collect::<Vec<_>>()
                ),
            );
            let rhs = p(s, "u_t")
                .mul(&placeholder(&sys, 0, &[]))
                .sub(&placeholder(&sys, 0, &["t"]));
            c.equal("right-hand side is u_t Δ - D_t Δ", s, out.rhs.expr(), &rhs);
            c.oracle(
                "oracle: u_t Δ - D_t Δ = D_x[u_t^2/2 - u_tt]",
                verify_divergence(
                    s,
                    &fluxes,
                    &p(s, "u_t")
                        .mul(&delta)
                        .sub(&total_derivative(&delta, sys.var("t"))),
                    &cfg(),
                ),
            );
            let dec = &out.decompositions[0];
            let t = p(s, "u*f_t - 2*f*u_t");
            let tx = dec
                .t
                .iter()
                .find(|(v, _)| *v == sys.var("x"))
                .map(|(_, e)| e.clone())
                .unwrap_or_default();
            c.equal(
                "T^x is (u f_t - 2 f u_t)/2",
                s,
                &tx.scale(&noether::expr::int(2)),
                &t,
            );
            c.equal(
                "Q is f Δ",
                s,
                dec.q.expr(),
                &p(s, "f").mul(&placeholder(&sys, 0, &[])),
            );
            c.zero("decomposition leaves no residual", s, &dec.residual);
        }
        Err(e) => c.truth("subset theorem applies", false, e.to_string()),
    }
    let density2 = p(s, "u_x*f_t - 2*f*exp(u)");
    let t = p(s, "u*f_t - 2*f*u_t");
    let two_f_delta = p(s, "2*f").mul(&delta);
    c.zero(
        "u_x f_t - 2f e^u = D_x(u f_t - 2f u_t) + 2fΔ",
        s,
        &density2
            .sub(&total_derivative(&t, sys.var("x")))
            .sub(&two_f_delta),
    );
    c.oracle(
        "oracle: density decomposition",
        verify_divergence(s, &[Expr::zero(), t], &density2.sub(&two_f_delta), &cfg()),
    );
    c
}

pub fn transonic() -> Checks {
    let mut c = Checks::default();
    let sys = make_transonic();
    let s = sys.space();
    c.equal(
        "E_u(L) is the transonic equation",
        s,
        &euler(&transonic_lagrangian(&sys), DepId(0)),
        sys.equation(0),
    );
    let law = transonic_law(&sys);
    c.zero(
        "reference fluxes with characteristic ξ_f have zero residual",
        s,
        &law.residual(&sys),
    );
    c.oracle(
        "oracle: transonic law",
        verify_conservation_law(&law, &sys, &cfg()),
    );
    let (tx, ty, q) = transonic_density_split(&sys);
    let (x, y) = (sys.var("x"), sys.var("y"));
    c.zero(
        "M^t = Q + D_x T^x + D_y T^y",
        s,
        &law.fluxes[0]
            .sub(&q)
            .sub(&total_derivative(&tx, x))
            .sub(&total_derivative(&ty, y)),
    );
    c.oracle(
        "oracle: density split",
        verify_divergence(
            s,
            &[Expr::zero(), tx.clone(), ty.clone()],
            &law.fluxes[0].sub(&q),
            &cfg(),
        ),
    );
    match subset_variable_theorem(&law, &sys, "f") {
        Ok(out) => {
            let dec = &out.decompositions[0];
            let find = |v: VarId| {
                dec.t
                    .iter()
                    .find(|(w, _)| *w == v)
                    .map(|(_, e)| e.clone())
                    .unwrap_or_default()
            };
            c.equal("derived T^x matches the reference one", s, &find(x), &tx);
            c.equal("derived T^y matches the reference one", s, &find(y), &ty);
            c.equal(
                "derived Q matches the reference one",
                s,
                &dec.q.expand(&sys),
                &q,
            );
            c.zero("decomposition residual", s, &dec.residual);
        }
        Err(e) => c.truth("subset theorem applies", false, e.to_string()),
    }
    match first_theorem_variational(
        &transonic_lagrangian(&sys),
        &transonic_symmetry(&sys),
        None,
        3,
    ) {
        Ok(d) => {
            let diff: Vec<Expr> = d
                .fluxes
                .iter()
                .zip(&law.fluxes)
                .map(|(a, b)| a.sub(b))
                .collect();
            c.zero(
                "variational route agrees up to a null divergence",
                s,
                &divergence(&diff),
            );
        }
        Err(e) => c.truth("variational route", false, e.to_string()),
    }
    c
}

/// `D_tΔ_4 - Σ_j D_jΔ_j` with the equations symbolic.
fn structural(sys: &DifferentialSystem) -> Expr {
    placeholder(sys, 3, &["t"])
        .sub(&placeholder(sys, 0, &["x"]))
        .sub(&placeholder(sys, 1, &["y"]))
        .sub(&placeholder(sys, 2, &["z"]))
}

fn structural_parts(sys: &DifferentialSystem) -> Vec<Expr> {
    let d = |a: usize, v: &str| total_derivative(sys.equation(a), sys.var(v));
    vec![d(3, "t"), d(0, "x").neg(), d(1, "y").neg(), d(2, "z").neg()]
}

pub fn vorticity() -> Checks {
    let mut c = Checks::default();
    let vs = make_vorticity_generic();
    let sys = &vs.system;
    let s = sys.space();
    let f = s.f("F", &[]);
    let cl = vs.cl_family(&f);
    c.zero("family residual", s, &cl.residual(sys));
    c.oracle(
        "oracle: vorticity family",
        verify_conservation_law(&cl, sys, &cfg()),
    );
    match second_theorem_identity(&cl, sys) {
        Ok(ids) => {
            let ok = ids.len() == 1 && ids[0].combination.expr() == &structural(sys);
            c.truth(
                "second theorem yields exactly D_tΔ_4 - ∇·Δ = 0",
                ok,
                ids.iter()
                    .map(|i| i.render(sys))
                    .collect::<Vec<_>>()
                    .join("; "),
            );
        }
        Err(e) => c.truth("second theorem applies", false, e.to_string()),
    }
    match triviality_classify(&cl, sys) {
        Ok(rep) => {
            c.truth(
                "classified trivial",
                rep.classification == Triviality::Trivial,
                format!("{:?}", rep.classification),
            );
            let want = [
                f.mul(&placeholder(sys, 3, &[])).neg(),
                f.mul(&placeholder(sys, 0, &[])),
                f.mul(&placeholder(sys, 1, &[])),
                f.mul(&placeholder(sys, 2, &[])),
            ];
            let got: Vec<Expr> = rep
                .residual_fluxes
                .iter()
                .map(|d| d.expr().clone())
                .collect();
            c.truth("residual fluxes are (-FΔ_4, FΔ⃗)", got == want, "");
        }
        Err(e) => c.truth("classification", false, e.to_string()),
    }
    for (name, v) in [
        ("Euler", make_vorticity_euler()),
        ("Navier-Stokes", make_vorticity_ns()),
    ] {
        let combo = DeltaCombination::new(structural(&v.system));
        c.zero(
            &format!("D_tΔ_4 - D_jΔ_j = 0 for {name}"),
            v.space(),
            &combo.expand(&v.system),
        );
        c.oracle(
            &format!("oracle: structural identity for {name}"),
            verify_sum(v.space(), &structural_parts(&v.system), &cfg()),
        );
    }
    c
}

pub fn navier_stokes() -> Checks {
    let mut c = Checks::default();
    let vs = make_vorticity_ns();
    let sys = &vs.system;
    let s = sys.space();
    let f = s.f("F", &[]);
    let w = omega(s);
    let u = VectorExpr::dependent(s, "u");
    let m = w.cross(&u).sub(&u.laplacian(s).scale(&s.param("nu")));
    let t = sys.var("t");
    let reference = ConservationLaw::new(
        std::iter::once(w.dot(&grad(s, &f)))
            .chain(
                m.cross(&grad(s, &f))
                    .sub(&w.scale(&total_derivative(&f, t)))
                    .0,
            )
            .collect(),
        grad(s, &f)
            .0
            .into_iter()
            .chain([total_derivative(&f, t).neg()])
            .collect(),
    );
    c.zero("reference law residual", s, &reference.residual(sys));
    c.truth(
        "catalog family equals the reference law",
        vs.cl_family(&f) == reference,
        "",
    );
    let eq = |a: usize| sys.equation(a).clone();
    let rhs_fluxes = [
        f.mul(&eq(3)).neg(),
        f.mul(&eq(0)),
        f.mul(&eq(1)),
        f.mul(&eq(2)),
    ];
    let ns1 = divergence(&reference.fluxes).sub(&divergence(&rhs_fluxes));
    c.zero(
        "left side minus ∇·(FΔ) - D_t(FΔ_4) vanishes off-shell",
        s,
        &ns1,
    );
    let fw = w.scale(&f);
    let ns2_space = m.scale(&f).curl(s).sub(&fw.derivative(t));
    let ns2: Vec<Expr> = std::iter::once(fw.div(s))
        .chain(ns2_space.0.clone())
        .collect();
    c.zero(
        "reference null divergence ∂_t[∇·(Fω)] + ∇·[∇×(FM) - ∂_t(Fω)]",
        s,
        &divergence(&ns2),
    );
    c.oracle(
        "oracle: reference null divergence",
        verify_divergence(s, &ns2, &Expr::zero(), &cfg()),
    );
    match triviality_classify(&reference, sys) {
        Ok(rep) => {
            c.truth(
                "classified trivial",
                rep.classification == Triviality::Trivial,
                "",
            );
            c.truth("kind 1 fluxes are (-FΔ_4, FΔ⃗)", rep.kind1 == rhs_fluxes, "");
            c.equal("kind 2 density is ∇·(Fω)", s, &rep.kind2[0], &fw.div(s));
            let want: Vec<Expr> = m.scale(&f).curl(s).neg().sub(&fw.derivative(t)).0.to_vec();
            c.truth(
                "kind 2 spatial fluxes are -∇×(FM) - ∂_t(Fω)",
                rep.kind2[1..] == want[..],
                "",
            );
            c.zero("kind 2 is divergence-free", s, &divergence(&rep.kind2));
            c.oracle(
                "oracle: kind 2 is divergence-free",
                verify_divergence(s, &rep.kind2, &Expr::zero(), &cfg()),
            );
        }
        Err(e) => c.truth("classification", false, e.to_string()),
    }
    let gf = grad(s, &f);
    let parts = [w.dot(&gf), f.mul(&w.div(s)), fw.div(s).neg()];
    c.zero("ω·∇F + F∇·ω = ∇·(Fω)", s, &Expr::sum(parts.iter()));
    c.oracle(
        "oracle: product rule relating the two charges",
        verify_sum(s, &parts, &cfg()),
    );
    c
}

pub fn ertel() -> Checks {
    let mut c = Checks::default();
    let (vs, aux) = make_ertel();
    let s = vs.space();
    let psi = s.u("psi", &[]);
    let w = omega(s);
    let u = VectorExpr::dependent(s, "u");
    let cer = vs.cl_family(&psi);
    c.zero(
        "family with F = ψ holds off-shell",
        s,
        &cer.residual(&vs.system),
    );
    let wgp = w.dot(&grad(s, &psi));
    let er: Vec<Expr> = std::iter::once(wgp.clone())
        .chain(u.scale(&wgp).0)
        .collect();
    match cer
        .fluxes
        .iter()
        .map(|k| reduce_with_constraints(k, &vs.system, &aux))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(red) => c.truth(
            "reduction with the advection constraint gives (ω·∇ψ, (ω·∇ψ)u)",
            red == er,
            format!("{:?}", red.iter().map(|e| s.render(e)).collect::<Vec<_>>()),
        ),
        Err(e) => c.truth("reduction", false, e.to_string()),
    }
    let union = vs.system.union(&aux).unwrap();
    let rhs = ertel_rhs(&vs, &union);
    match law_from_combination(&union, &er, &rhs) {
        Ok(law) => {
            c.truth(
                "characteristic is zero",
                law.characteristic.iter().all(Expr::is_zero),
                "",
            );
            c.zero("residual", s, &law.residual(&union));
            match triviality_classify(&law, &union) {
                Ok(r) => c.truth(
                    "classified trivial",
                    r.classification == Triviality::Trivial,
                    "",
                ),
                Err(e) => c.truth("classification", false, e.to_string()),
            }
        }
        Err(e) => c.truth(
            "fluxes match the stated right-hand side",
            false,
            e.to_string(),
        ),
    }
    c.oracle(
        "oracle: Ertel divergence",
        verify_divergence(s, &er, &rhs.expand(&union), &cfg()),
    );
    c
}

pub fn curl_potential() -> Checks {
    let mut c = Checks::default();
    let cp = make_curl_potential();
    let sys = &cp.system;
    let s = cp.space();
    let t = sys.var("t");
    let u = VectorExpr::dependent(s, "u");
    let v = VectorExpr::dependent(s, "v");
    let w = u.curl(s);
    let m = w.curl(s).scale(&s.param("nu"));
    let delta = w.derivative(t).add(&m.curl(s));
    let l = u
        .neg()
        .dot(&v.curl(s).derivative(t))
        .add(&m.dot(&v.curl(s)));
    c.equal("catalog Lagrangian", s, &cp.lagrangian, &l);
    for a in 0..3 {
        let q = s.dep_id(&format!("v{}", a + 1)).unwrap();
        c.equal(
            &format!("E_v{}(L) = Δ_{}", a + 1, a + 1),
            s,
            &euler(&l, q),
            delta.component(a),
        );
        c.oracle(
            &format!("oracle: E_v{}(L) = Δ_{}", a + 1, a + 1),
            verify_sum(s, &[euler(&l, q), delta.component(a).neg()], &cfg()),
        );
    }
    let lhs = l.sub(&v.dot(&delta));
    let fl: Vec<Expr> = std::iter::once(v.dot(&w).neg())
        .chain(v.cross(&m).sub(&v.derivative(t).cross(&u)).0)
        .collect();
    c.zero(
        "L - v·Δ = -∂_t(v·∇×u) + ∇·(v×M - ∂_tv×u)",
        s,
        &lhs.sub(&divergence(&fl)),
    );

    let f = s.f("F", &[]);
    let gf = grad(s, &f);
    let reference = ConservationLaw::new(
        std::iter::once(gf.dot(&w))
            .chain(
                m.cross(&gf)
                    .add(&grad(s, &total_derivative(&f, t)).cross(&u))
                    .0,
            )
            .collect(),
        [Expr::zero(), Expr::zero(), Expr::zero()]
            .into_iter()
            .chain(gf.0.clone())
            .collect(),
    );
    c.zero("gauge law residual", s, &reference.residual(sys));
    c.oracle(
        "oracle: gauge law",
        verify_conservation_law(&reference, sys, &cfg()),
    );
    let div_delta = placeholder(sys, 3, &["x"])
        .add(&placeholder(sys, 4, &["y"]))
        .add(&placeholder(sys, 5, &["z"]));
    let is_div = |id: &DifferentialIdentity| {
        id.combination.expr() == &div_delta || id.combination.expr() == &div_delta.neg()
    };
    match second_theorem_identity(&reference, sys) {
        Ok(ids) => c.truth(
            "gauge law yields ∇·Δ = 0",
            ids.len() == 1 && is_div(&ids[0]),
            ids.iter()
                .map(|i| i.render(sys))
                .collect::<Vec<_>>()
                .join("; "),
        ),
        Err(e) => c.truth("second theorem", false, e.to_string()),
    }
    match first_theorem_variational(&l, &cp.gauge_v(&f), None, 4)
        .and_then(|law| second_theorem_identity(&law, sys))
    {
        Ok(ids) => c.truth(
            "variational gauge family yields ∇·Δ = 0",
            ids.len() == 1 && is_div(&ids[0]),
            "",
        ),
        Err(e) => c.truth("variational gauge family", false, e.to_string()),
    }
    c.oracle(
        "oracle: ∇·Δ = 0",
        verify_sum(
            s,
            &(0..3)
                .map(|a| total_derivative(delta.component(a), VarId(a as u8 + 1)))
                .collect::<Vec<_>>(),
            &cfg(),
        ),
    );
    c
}

pub fn euler_symmetry() -> Checks {
    let mut c = Checks::default();
    let vs = make_vorticity_euler();
    let sys = &vs.system;
    let s = sys.space();
    let g = euler_potentials(&vs);
    let fv = solenoidal(s, &g);
    let (t, xs) = (sys.var("t"), ["x", "y", "z"].map(|n| sys.var(n)));
    let w = omega(s);
    let u = VectorExpr::dependent(s, "u");
    let dj = |e: &VectorExpr, j: usize| e.derivative(xs[j]);
    // α^i = ω^j ∂_j f^i - f^j ∂_j ω^i, β^i = ∂_t f^i + u^j ∂_j f^i - f^j ∂_j u^i
    let adv = |a: &VectorExpr, b: &VectorExpr| {
        (0..3).fold(VectorExpr::zero(), |acc, j| {
            acc.add(&dj(b, j).scale(a.component(j)))
        })
    };
    let alpha = adv(&w, &fv).sub(&adv(&fv, &w));
    let beta = fv.derivative(t).add(&adv(&u, &fv)).sub(&adv(&fv, &u));
    let field = euler_vorticity_field(&vs, &g, SymmetryReading::Corrected);
    let want: Vec<Expr> = alpha.0.iter().chain(&beta.0).cloned().collect();
    c.truth(
        "corrected reading matches α, β with u^j∂_jf^i",
        field.components == want,
        "",
    );

    let holds = |r| is_symmetry(sys, &euler_vorticity_field(&vs, &g, r)).map(|k| k.holds);
    let corrected = holds(SymmetryReading::Corrected);
    let reference = holds(SymmetryReading::Literal);
    c.truth(
        "corrected reading is a symmetry",
        corrected == Ok(true),
        format!("{corrected:?}"),
    );
    c.truth(
        "reading with the extra f is not a symmetry",
        reference == Ok(false),
        format!("{reference:?}"),
    );
    match euler_vorticity_symmetries(&vs, &g) {
        Ok((_, r)) => c.truth(
            "catalog selects the corrected reading",
            r == SymmetryReading::Corrected,
            format!("{r:?}"),
        ),
        Err(e) => c.truth("catalog selects a reading", false, e.to_string()),
    }

    let ph = |a: usize, v: Option<VarId>| {
        sys.placeholder(a, &v.map(MultiIndex::single).unwrap_or_default())
    };
    for i in 0..3 {
        let a = sys.equation(i).clone();
        let d = match first_theorem_quasi(sys, &a, &field, None) {
            Ok(d) => d,
            Err(e) => {
                c.truth(
                    &format!("A = Δ_{}: quasi-Noether construction", i + 1),
                    false,
                    e.to_string(),
                );
                continue;
            }
        };
        // ∂_j f^i Δ_j - ∂_t f^i Δ_4 - D_j(f^j Δ_i)
        let mut parts = Vec::new();
        for (j, &xj) in xs.iter().enumerate() {
            parts.push(total_derivative(fv.component(i), xj).mul(&ph(j, None)));
            parts.push(total_derivative(&fv.component(j).mul(&ph(i, None)), xj).neg());
        }
        parts.push(total_derivative(fv.component(i), t).mul(&ph(3, None)).neg());
        let gamma = Expr::sum(parts.iter());
        c.equal(
            &format!(
                "A = Δ_{}: X_α A = ∂_jf^iΔ_j - ∂_tf^iΔ_4 - D_j(f^jΔ_i)",
                i + 1
            ),
            s,
            d.gamma.combination(sys).expr(),
            &gamma,
        );
        let k: Vec<Expr> = std::iter::once(alpha.component(i).clone())
            .chain((0..3).map(|j| {
                alpha
                    .component(i)
                    .mul(u.component(j))
                    .sub(&alpha.component(j).mul(u.component(i)))
                    .add(&w.component(i).mul(beta.component(j)))
                    .sub(&w.component(j).mul(beta.component(i)))
            }))
            .collect();
        let expanded = DeltaCombination::new(gamma).expand(sys);
        c.zero(
            &format!("A = Δ_{}: reference fluxes have that divergence", i + 1),
            s,
            &divergence(&k).sub(&expanded),
        );
        c.oracle(
            &format!("oracle: A = Δ_{} law", i + 1),
            verify_divergence(s, &k, &expanded, &cfg()),
        );
        c.oracle(
            &format!("oracle: A = Δ_{} derived law", i + 1),
            verify_conservation_law(&d.law, sys, &cfg()),
        );
        match second_theorem_identity(&d.law, sys) {
            Ok(ids) => {
                let st = structural(sys);
                let good = ids.iter().all(|id| {
                    id.combination.is_zero()
                        || id.strengthen(sys).is_some_and(|x| {
                            x.combination.expr() == &st || x.combination.expr() == &st.neg()
                        })
                });
                let nonvacuous = ids.iter().filter(|id| !id.combination.is_zero()).count();
                c.truth(
                    &format!("A = Δ_{}: identities are D_k(D_tΔ_4 - D_jΔ_j) = 0", i + 1),
                    good && nonvacuous == 2,
                    ids.iter()
                        .map(|x| x.render(sys))
                        .collect::<Vec<_>>()
                        .join("; "),
                );
            }
            Err(e) => c.truth("second theorem", false, e.to_string()),
        }
    }
    c
}

/// Corrupted controls that the oracle must reject.
pub fn controls() -> Vec<(&'static str, Result<OracleReport, EvalError>)> {
    let kdv = make_kdv();
    let tr = make_transonic();
    let mut bad = transonic_law(&tr);
    bad.fluxes[1] = bad.fluxes[1].add(&p(tr.space(), "u_x*f"));
    vec![
        (
            "sign-flipped KdV law",
            verify_conservation_law(&reference_kdv_law(&kdv, -1), &kdv, &cfg()),
        ),
        (
            "transonic law with a corrupted flux",
            verify_conservation_law(&bad, &tr, &cfg()),
        ),
    ]
}
