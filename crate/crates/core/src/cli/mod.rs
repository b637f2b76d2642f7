//! Command-line front end.
//!
//! Every subcommand reads a system either from a JSON file (`--system`) or
//! from the built-in catalog (`--catalog`), runs one engine operation and
//! prints a plain-text narrative or, with `--json`, a JSON document whose
//! expressions are canonical strings. Exit codes: 0 when every invoked
//! check passes, 1 when a check fails, 2 on malformed input.

mod file;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::catalog::{catalog_entry, CatalogEntry, CATALOG_NAMES};
use crate::engine::{
    characteristic_from_fluxes, equivalent_characteristics, first_theorem_quasi,
    first_theorem_variational, is_symmetry, second_theorem_identity, subset_variable_theorem,
    triviality_classify, ConservationLaw, DifferentialIdentity, DifferentialSystem, EngineError,
    Triviality,
};
use crate::expr::{Expr, MultiIndex, Space, VarId};
use crate::jet::{
    divergence, euler, prolong_apply, total_derivative_multi, EvolutionaryVectorField,
    ReconstructError,
};
use crate::oracle::{
    verify_conservation_law, verify_divergence, verify_sum, OracleConfig, OracleReport,
};

pub use file::{FunctionSpec, InputError, LawSpec, SystemFile};

#[derive(Parser, Debug)]
#[command(
    name = "noether",
    version,
    about = "Conservation laws of PDE systems from symmetries"
)]
pub struct Cli {
    /// System definition file (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub system: Option<PathBuf>,
    /// Use a built-in catalog system instead of a file.
    #[arg(long, global = true, value_name = "NAME")]
    pub catalog: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the numeric oracle.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Oracle trials per identity.
    #[arg(long, global = true, default_value_t = 50)]
    pub trials: usize,
    /// Oracle tolerance on the relative residual.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Highest derivative order the on-shell rewriter may introduce.
    #[arg(long, global = true, value_name = "N")]
    pub order_cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Euler operator of a Lagrangian (the file's Lagrangian by default).
    Euler {
        /// Expression to apply the operator to.
        target: Option<String>,
    },
    /// Total derivative D_J of an expression.
    Tderiv {
        /// Expression in the system's variables.
        expr: String,
        /// Comma-separated independent variables, e.g. `x,x`.
        #[arg(long, value_delimiter = ',')]
        wrt: Vec<String>,
    },
    /// Prolonged evolutionary field applied to an expression.
    Prolong {
        /// Expression in the system's variables.
        expr: String,
        /// A symmetry declared in the system.
        #[arg(long, conflicts_with = "field")]
        symmetry: Option<String>,
        /// Components separated by `;`, one per dependent variable.
        #[arg(long)]
        field: Option<String>,
    },
    /// Conservation law generated by a named symmetry.
    ClFromSymmetry {
        /// Name of a symmetry declared in the system.
        symmetry: String,
        /// Variational route; the file's Lagrangian when no value is given.
        #[arg(long, num_args = 0..=1, conflicts_with = "alternative")]
        lagrangian: Option<Option<String>>,
        /// Quasi-Noether route; the file's alternative Lagrangian when no
        /// value is given.
        #[arg(long, num_args = 0..=1)]
        alternative: Option<Option<String>>,
        /// Multipliers separated by `;`.
        #[arg(long)]
        beta: Option<String>,
    },
    /// Characteristic form of a flux tuple.
    Characteristic {
        /// A law declared in the system.
        #[arg(long, conflicts_with = "flux")]
        law: Option<String>,
        /// Fluxes separated by `;`.
        #[arg(long)]
        flux: Option<String>,
    },
    /// Triviality classification of a law with arbitrary functions of all
    /// independent variables.
    Classify {
        /// Name of a law declared in the system.
        law: String,
    },
    /// Differential identities from a family of symmetries or laws.
    SecondTheorem {
        /// Symmetry family to derive the law from.
        symmetry: Option<String>,
        /// Use a declared law instead of a symmetry.
        #[arg(long, conflicts_with = "symmetry")]
        law: Option<String>,
    },
    /// Law and flux decomposition for an arbitrary function of a subset of
    /// the independent variables.
    Subset {
        /// Name of a law declared in the system.
        law: String,
        /// Arbitrary function to split on; needed when the law has several.
        #[arg(long)]
        function: Option<String>,
    },
    /// List catalog systems, or print one as a system file.
    Catalog {
        /// Catalog system to print.
        name: Option<String>,
    },
    /// Check every stored object symbolically and with the numeric oracle.
    Verify,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Check(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Report {
    text: String,
    json: Map<String, Value>,
    passed: bool,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut json = Map::new();
        json.insert("command".into(), command.into());
        Report {
            text: String::new(),
            json,
            passed: true,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.json.insert(key.into(), v.into());
    }

    fn fail(&mut self) {
        self.passed = false;
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    execute(&cli, out, err)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli) {
        Ok(report) => {
            let status = if report.passed { "pass" } else { "fail" };
            if cli.json {
                let mut doc = report.json;
                doc.insert("status".into(), status.into());
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&Value::Object(doc)).unwrap()
                );
            } else {
                let _ = write!(out, "{}", report.text);
            }
            if report.passed {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Input(m) => (2, "input error", m),
                Failure::Check(m) => (1, "check failed", m),
            };
            if cli.json {
                let doc = json!({ "status": kind, "message": msg });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
            }
            let _ = writeln!(err, "{kind}: {msg}");
            code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let cfg = OracleConfig {
        trials: cli.trials,
        seed: cli.seed,
        tol: cli.tol,
        ..OracleConfig::default()
    };
    match &cli.command {
        Command::Catalog { name } => cmd_catalog(name.as_deref(), cli.json),
        Command::Verify => match source(cli)? {
            Some(entry) => cmd_verify(&[entry], &cfg),
            None => {
                let all: Vec<CatalogEntry> = CATALOG_NAMES
                    .iter()
                    .map(|n| with_cap(catalog_entry(n).expect("listed"), cli.order_cap))
                    .collect();
                cmd_verify(&all, &cfg)
            }
        },
        cmd => {
            let entry = source(cli)?.ok_or_else(|| {
                Failure::Input("no system given; use --system FILE or --catalog NAME".into())
            })?;
            match cmd {
                Command::Euler { target } => cmd_euler(&entry, target.as_deref()),
                Command::Tderiv { expr, wrt } => cmd_tderiv(&entry, expr, wrt),
                Command::Prolong {
                    expr,
                    symmetry,
                    field,
                } => cmd_prolong(&entry, expr, symmetry.as_deref(), field.as_deref()),
                Command::ClFromSymmetry {
                    symmetry,
                    lagrangian,
                    alternative,
                    beta,
                } => {
                    let route = Route::select(&entry, lagrangian, alternative, beta.as_deref())?;
                    cmd_cl_from_symmetry(&entry, symmetry, &route, &cfg)
                }
                Command::Characteristic { law, flux } => {
                    cmd_characteristic(&entry, law.as_deref(), flux.as_deref())
                }
                Command::Classify { law } => cmd_classify(&entry, law),
                Command::SecondTheorem { symmetry, law } => {
                    cmd_second_theorem(&entry, symmetry.as_deref(), law.as_deref())
                }
                Command::Subset { law, function } => cmd_subset(&entry, law, function.as_deref()),
                Command::Catalog { .. } | Command::Verify => unreachable!(),
            }
        }
    }
}

fn with_cap(mut e: CatalogEntry, cap: Option<usize>) -> CatalogEntry {
    if let Some(c) = cap {
        e.system = e.system.with_order_cap(c);
    }
    e
}

fn source(cli: &Cli) -> Result<Option<CatalogEntry>, Failure> {
    match (&cli.system, &cli.catalog) {
        (Some(_), Some(_)) => Err(Failure::Input(
            "--system and --catalog are exclusive".into(),
        )),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(Some(SystemFile::from_json(&text)?.load(cli.order_cap)?))
        }
        (None, Some(name)) => catalog_entry(name)
            .map(|e| Some(with_cap(e, cli.order_cap)))
            .ok_or_else(|| {
                Failure::Input(format!(
                    "unknown catalog system `{name}`; known: {}",
                    CATALOG_NAMES.join(", ")
                ))
            }),
        (None, None) => Ok(None),
    }
}

fn space(e: &CatalogEntry) -> &Space {
    e.system.space()
}

fn parse(e: &CatalogEntry, text: &str) -> Result<Expr, Failure> {
    space(e)
        .parse(text)
        .map_err(|err| Failure::Input(format!("`{text}`: {err}")))
}

fn parse_list(e: &CatalogEntry, text: &str) -> Result<Vec<Expr>, Failure> {
    text.split(';').map(|s| parse(e, s.trim())).collect()
}

fn rs(sys: &DifferentialSystem, xs: &[Expr]) -> Vec<String> {
    xs.iter().map(|x| sys.space().render(x)).collect()
}

fn engine_failure(sys: &DifferentialSystem, e: EngineError) -> Failure {
    let r = |x: &Expr| sys.space().render(x);
    let msg = e.to_string();
    match e {
        EngineError::NotQuasiNoether(v)
        | EngineError::NotASymmetry(v)
        | EngineError::NotVariationalSymmetry(v) => {
            let rem: Vec<String> = v.iter().filter(|x| !x.is_zero()).map(r).collect();
            Failure::Check(format!("{msg}\n  remainders: {}", rem.join("; ")))
        }
        EngineError::MultiplierMismatch(x)
        | EngineError::FluxMismatch(x)
        | EngineError::NotConserved(x)
        | EngineError::IdentityFails { residue: x, .. } => {
            Failure::Check(format!("{msg}\n  residue: {}", r(&x)))
        }
        EngineError::Reconstruct(ReconstructError::NotADivergence(_)) => Failure::Check(msg),
        _ => Failure::Input(msg),
    }
}

fn law_json(sys: &DifferentialSystem, cl: &ConservationLaw) -> Value {
    json!({ "fluxes": rs(sys, &cl.fluxes), "characteristic": rs(sys, &cl.characteristic) })
}

fn write_law(report: &mut Report, sys: &DifferentialSystem, cl: &ConservationLaw) {
    let s = sys.space();
    for (i, k) in cl.fluxes.iter().enumerate() {
        report.line(format!(
            "  J^{} = {}",
            s.var_name(VarId(i as u8)),
            s.render(k)
        ));
    }
    for (a, x) in cl.characteristic.iter().enumerate() {
        report.line(format!("  xi[{}] = {}", sys.names()[a], s.render(x)));
    }
}

fn oracle_line(
    report: &mut Report,
    what: &str,
    r: Result<OracleReport, crate::expr::EvalError>,
) -> Value {
    match r {
        Ok(o) => {
            let ok = o.passed();
            if !ok {
                report.fail();
            }
            report.line(format!(
                "  oracle {what}: {} (max relative residual {:.3e} over {} trials, tol {:.1e})",
                if ok { "pass" } else { "FAIL" },
                o.max_residual,
                o.trials,
                o.tol
            ));
            json!({ "passed": ok, "max_residual": o.max_residual, "trials": o.trials })
        }
        Err(e) => {
            report.fail();
            report.line(format!("  oracle {what}: FAIL ({e})"));
            json!({ "passed": false, "error": e.to_string() })
        }
    }
}

fn cmd_euler(entry: &CatalogEntry, target: Option<&str>) -> Result<Report, Failure> {
    let sys = &entry.system;
    let (l, from_file) = match target {
        Some(t) => (parse(entry, t)?, false),
        None => (
            entry.lagrangian.clone().ok_or_else(|| {
                Failure::Input("no target given and the system has no Lagrangian".into())
            })?,
            true,
        ),
    };
    let mut report = Report::new("euler");
    let s = space(entry);
    report.line(format!("L = {}", s.render(&l)));
    let mut out = Map::new();
    for q in s.deps() {
        let e = euler(&l, q);
        report.line(format!("E_{}(L) = {}", s.dep_name(q), s.render(&e)));
        out.insert(s.dep_name(q).to_string(), s.render(&e).into());
    }
    report.set("lagrangian", s.render(&l));
    report.set("euler", out);
    if from_file && s.m() == sys.len() {
        let matches = s.deps().all(|q| &euler(&l, q) == sys.equation(q.index()));
        report.line(if matches {
            "The Euler-Lagrange equations coincide with the system."
        } else {
            "The Euler-Lagrange equations differ from the system as written."
        });
        report.set("matches_system", matches);
    }
    Ok(report)
}

fn cmd_tderiv(entry: &CatalogEntry, expr: &str, wrt: &[String]) -> Result<Report, Failure> {
    let s = space(entry);
    let e = parse(entry, expr)?;
    let vars = wrt
        .iter()
        .filter(|w| !w.is_empty())
        .map(|w| {
            s.var_id(w.trim())
                .ok_or_else(|| Failure::Input(format!("`{w}` is not an independent variable")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let j = MultiIndex::from_vars(vars);
    let d = total_derivative_multi(&e, &j);
    let mut report = Report::new("tderiv");
    let label: Vec<&str> = j.sequence().into_iter().map(|v| s.var_name(v)).collect();
    report.line(format!(
        "D_[{}] {} = {}",
        label.join(","),
        s.render(&e),
        s.render(&d)
    ));
    report.set("wrt", label);
    report.set("input", s.render(&e));
    report.set("result", s.render(&d));
    Ok(report)
}

fn field_from(
    entry: &CatalogEntry,
    symmetry: Option<&str>,
    field: Option<&str>,
) -> Result<EvolutionaryVectorField, Failure> {
    match (symmetry, field) {
        (Some(n), _) => entry
            .symmetry(n)
            .cloned()
            .ok_or_else(|| Failure::Input(format!("unknown symmetry `{n}`"))),
        (None, Some(f)) => {
            let c = parse_list(entry, f)?;
            if c.len() != space(entry).m() {
                return Err(Failure::Input(format!(
                    "--field needs {} components",
                    space(entry).m()
                )));
            }
            Ok(EvolutionaryVectorField::new(c))
        }
        (None, None) => Err(Failure::Input("give --symmetry NAME or --field".into())),
    }
}

fn cmd_prolong(
    entry: &CatalogEntry,
    expr: &str,
    symmetry: Option<&str>,
    field: Option<&str>,
) -> Result<Report, Failure> {
    let s = space(entry);
    let alpha = field_from(entry, symmetry, field)?;
    let e = parse(entry, expr)?;
    let x = prolong_apply(&alpha, &e);
    let mut report = Report::new("prolong");
    let comps: Vec<String> = alpha.components.iter().map(|c| s.render(c)).collect();
    report.line(format!("alpha = ({})", comps.join(", ")));
    report.line(format!("pr X_alpha [{}] = {}", s.render(&e), s.render(&x)));
    report.set("field", comps);
    report.set("input", s.render(&e));
    report.set("result", s.render(&x));
    Ok(report)
}

enum Route {
    Quasi { a: Expr, beta: Option<Vec<Expr>> },
    Variational { l: Expr, use_file_fluxes: bool },
}

impl Route {
    fn select(
        entry: &CatalogEntry,
        lagrangian: &Option<Option<String>>,
        alternative: &Option<Option<String>>,
        beta: Option<&str>,
    ) -> Result<Route, Failure> {
        let beta_arg = beta.map(|b| parse_list(entry, b)).transpose()?;
        let file_alt = || {
            entry.alternative.clone().ok_or_else(|| {
                Failure::Input("the system declares no alternative Lagrangian".into())
            })
        };
        let file_lag = || {
            entry
                .lagrangian
                .clone()
                .ok_or_else(|| Failure::Input("the system declares no Lagrangian".into()))
        };
        Ok(match (lagrangian, alternative) {
            (Some(Some(l)), _) => Route::Variational { l: parse(entry, l)?, use_file_fluxes: false },
            (Some(None), _) => Route::Variational { l: file_lag()?, use_file_fluxes: true },
            (None, Some(Some(a))) => Route::Quasi { a: parse(entry, a)?, beta: beta_arg },
            (None, Some(None)) => Route::Quasi { a: file_alt()?, beta: beta_arg.or_else(|| entry.multipliers.clone()) },
            (None, None) if entry.alternative.is_some() => {
                Route::Quasi { a: file_alt()?, beta: beta_arg.or_else(|| entry.multipliers.clone()) }
            }
            (None, None) if entry.lagrangian.is_some() => Route::Variational { l: file_lag()?, use_file_fluxes: true },
            (None, None) => {
                return Err(Failure::Input(
                    "the system has neither a Lagrangian nor an alternative Lagrangian; pass one explicitly".into(),
                ))
            }
        })
    }
}

fn derive_law(
    entry: &CatalogEntry,
    name: &str,
    route: &Route,
    report: &mut Report,
) -> Result<ConservationLaw, Failure> {
    let sys = &entry.system;
    let s = sys.space();
    let alpha = entry
        .symmetry(name)
        .ok_or_else(|| Failure::Input(format!("unknown symmetry `{name}`")))?;
    let comps = rs(sys, &alpha.components);
    report.line(format!("Symmetry `{name}`: alpha = ({})", comps.join(", ")));
    report.set("symmetry", json!({ "name": name, "components": comps }));
    match route {
        Route::Quasi { a, beta } => {
            report.line("Noether's first theorem, quasi-Noether form:");
            report.line(format!("  alternative Lagrangian A = {}", s.render(a)));
            if let Some(b) = beta {
                report.line(format!("  multipliers beta = ({})", rs(sys, b).join(", ")));
            }
            let d = first_theorem_quasi(sys, a, alpha, beta.as_deref())
                .map_err(|e| engine_failure(sys, e))?;
            report.line("  E(A) vanishes on-shell and X_alpha A lies in the differential ideal.");
            report.line(format!(
                "  X_alpha A = {}",
                d.gamma.combination(sys).render(sys)
            ));
            report.set(
                "route",
                json!({
                    "kind": "quasi-noether",
                    "alternative": s.render(a),
                    "beta": beta.as_ref().map(|b| rs(sys, b)),
                    "gamma": d.gamma.combination(sys).render(sys),
                    "noether_fluxes": rs(sys, &d.noether_fluxes),
                }),
            );
            Ok(d.law)
        }
        Route::Variational { l, use_file_fluxes } => {
            report.line("Noether's first theorem, variational form:");
            report.line(format!("  Lagrangian L = {}", s.render(l)));
            let m = if *use_file_fluxes {
                entry
                    .variation_fluxes
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, m)| m.clone())
            } else {
                None
            };
            if let Some(m) = &m {
                report.line(format!("  X_alpha L = Div({})", rs(sys, m).join(", ")));
            } else {
                report.line("  X_alpha L is inverted as a divergence by the homotopy operator.");
            }
            let law = first_theorem_variational(l, alpha, m, s.p())
                .map_err(|e| engine_failure(sys, e))?;
            report.set(
                "route",
                json!({ "kind": "variational", "lagrangian": s.render(l) }),
            );
            Ok(law)
        }
    }
}

fn cmd_cl_from_symmetry(
    entry: &CatalogEntry,
    name: &str,
    route: &Route,
    cfg: &OracleConfig,
) -> Result<Report, Failure> {
    let sys = &entry.system;
    let mut report = Report::new("cl-from-symmetry");
    let law = derive_law(entry, name, route, &mut report)?;
    report.line("Conservation law D_i J^i = xi^a Delta_a:");
    write_law(&mut report, sys, &law);
    let residual = law.residual(sys);
    let exact = law.is_valid(sys);
    if !exact {
        report.fail();
    }
    report.line(format!(
        "  off-shell residual: {}",
        sys.space().render(&residual)
    ));
    let oracle = oracle_line(
        &mut report,
        "residual",
        verify_conservation_law(&law, sys, cfg),
    );
    report.set("law", law_json(sys, &law));
    report.set("residual", sys.space().render(&residual));
    report.set("oracle", oracle);
    if let Some(stored) = entry.law(name) {
        let eq = equivalent_characteristics(sys, &law.characteristic, &stored.characteristic)
            .map_err(|e| engine_failure(sys, e))?;
        report.line(format!(
            "  characteristic {} the stored law `{name}` on-shell",
            if eq { "agrees with" } else { "differs from" }
        ));
        report.set("matches_stored_characteristic", eq);
    }
    Ok(report)
}

fn cmd_characteristic(
    entry: &CatalogEntry,
    law: Option<&str>,
    flux: Option<&str>,
) -> Result<Report, Failure> {
    let sys = &entry.system;
    let (fluxes, stored) = match (law, flux) {
        (Some(n), _) => {
            let l = entry
                .law(n)
                .ok_or_else(|| Failure::Input(format!("unknown law `{n}`")))?;
            (l.fluxes.clone(), Some(l))
        }
        (None, Some(f)) => (parse_list(entry, f)?, None),
        (None, None) => return Err(Failure::Input("give --law NAME or --flux".into())),
    };
    let cl = characteristic_from_fluxes(&fluxes, sys).map_err(|e| engine_failure(sys, e))?;
    let mut report = Report::new("characteristic");
    report.line(
        "Divergence of the fluxes decomposed in the differential ideal and integrated by parts:",
    );
    write_law(&mut report, sys, &cl);
    report.set("law", law_json(sys, &cl));
    if let Some(l) = stored {
        let eq = equivalent_characteristics(sys, &cl.characteristic, &l.characteristic)
            .map_err(|e| engine_failure(sys, e))?;
        report.line(format!(
            "  on-shell {} the stored characteristic",
            if eq { "equal to" } else { "different from" }
        ));
        report.set("matches_stored_characteristic", eq);
    }
    Ok(report)
}

fn checked_law<'a>(entry: &'a CatalogEntry, name: &str) -> Result<&'a ConservationLaw, Failure> {
    let sys = &entry.system;
    let cl = entry
        .law(name)
        .ok_or_else(|| Failure::Input(format!("unknown law `{name}`")))?;
    if cl.fluxes.len() != sys.space().p() || cl.characteristic.len() != sys.len() {
        return Err(Failure::Input(format!(
            "law `{name}` has the wrong number of components"
        )));
    }
    let r = cl.residual(sys);
    if !r.is_zero() {
        return Err(Failure::Check(format!(
            "law `{name}` does not satisfy D_i J^i = xi^a Delta_a; residual: {}",
            sys.space().render(&r)
        )));
    }
    Ok(cl)
}

fn write_identity(
    report: &mut Report,
    sys: &DifferentialSystem,
    id: &DifferentialIdentity,
) -> Value {
    let vacuous = id.combination.is_zero();
    let stronger = if vacuous { None } else { id.strengthen(sys) };
    let tag = if vacuous { "  (vacuous)" } else { "" };
    report.line(format!("  {}{tag}", id.render(sys)));
    if let Some(st) = &stronger {
        report.line(format!("    strengthened: {}", st.render(sys)));
    }
    json!({
        "identity": id.render(sys),
        "holds": id.holds(),
        "vacuous": vacuous,
        "strengthened": stronger.as_ref().map(|s| s.render(sys)),
        "source": id.provenance,
    })
}

fn cmd_classify(entry: &CatalogEntry, name: &str) -> Result<Report, Failure> {
    let sys = &entry.system;
    let cl = checked_law(entry, name)?;
    let rep = triviality_classify(cl, sys).map_err(|e| match e {
        EngineError::FunctionScope(f) => Failure::Input(format!(
            "arbitrary function `{f}` does not depend on every independent variable; use `subset`"
        )),
        e => engine_failure(sys, e),
    })?;
    let s = sys.space();
    let mut report = Report::new("classify");
    let verdict = match rep.classification {
        Triviality::Trivial => "TRIVIAL",
        Triviality::Nontrivial => "NONTRIVIAL",
    };
    report.line(format!("Law `{name}`: {verdict}"));
    if !cl.functions.is_empty() {
        report.line("Euler operators with respect to the arbitrary functions give the identities:");
    }
    let ids: Vec<Value> = rep
        .identities
        .iter()
        .map(|id| write_identity(&mut report, sys, id))
        .collect();
    report.line(format!(
        "Characteristic free of arbitrary functions, on-shell: ({})",
        rs(sys, &rep.reduced_characteristic).join(", ")
    ));
    if !cl.functions.is_empty() {
        report.line("Fluxes vanishing on-shell (kind 1):");
        for (i, c) in rep.residual_fluxes.iter().enumerate() {
            report.line(format!(
                "  {}: {}",
                s.var_name(VarId(i as u8)),
                c.render(sys)
            ));
        }
        report.line("Remaining fluxes (kind 2):");
        for (i, k) in rep.kind2.iter().enumerate() {
            report.line(format!("  {}: {}", s.var_name(VarId(i as u8)), s.render(k)));
        }
        let div2 = divergence(&rep.kind2);
        report.line(format!("  divergence of kind 2: {}", s.render(&div2)));
        report.set("kind2_divergence", s.render(&div2));
    }
    report.set("law", name);
    report.set("classification", verdict);
    report.set("identities", ids);
    report.set(
        "reduced_characteristic",
        rs(sys, &rep.reduced_characteristic),
    );
    report.set(
        "kind1",
        rep.residual_fluxes
            .iter()
            .map(|c| c.render(sys))
            .collect::<Vec<_>>(),
    );
    report.set("kind2", rs(sys, &rep.kind2));
    Ok(report)
}

fn cmd_second_theorem(
    entry: &CatalogEntry,
    symmetry: Option<&str>,
    law: Option<&str>,
) -> Result<Report, Failure> {
    let sys = &entry.system;
    let mut report = Report::new("second-theorem");
    let cl = match (symmetry, law) {
        (_, Some(n)) => {
            report.set("law", n);
            checked_law(entry, n)?.clone()
        }
        (Some(n), None) => {
            let route = Route::select(entry, &None, &None, None)?;
            derive_law(entry, n, &route, &mut report)?
        }
        (None, None) => match entry.symmetries.as_slice() {
            [(n, _)] => {
                let route = Route::select(entry, &None, &None, None)?;
                derive_law(entry, &n.clone(), &route, &mut report)?
            }
            _ => return Err(Failure::Input("name a symmetry or pass --law".into())),
        },
    };
    let ids = second_theorem_identity(&cl, sys).map_err(|e| engine_failure(sys, e))?;
    report.line(format!(
        "Noether's second theorem: the law depends on {}; each yields an identity among the equations:",
        cl.functions.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
    ));
    let out: Vec<Value> = cl
        .functions
        .iter()
        .zip(&ids)
        .map(|(f, id)| {
            report.line(format!(" from {f}:"));
            let mut v = write_identity(&mut report, sys, id);
            v["function"] = f.to_string().into();
            v
        })
        .collect();
    report.set("identities", out);
    Ok(report)
}

fn cmd_subset(entry: &CatalogEntry, name: &str, function: Option<&str>) -> Result<Report, Failure> {
    let sys = &entry.system;
    let s = sys.space();
    let cl = checked_law(entry, name)?;
    let f = match function {
        Some(f) => f.to_string(),
        None => {
            let partial: Vec<_> = cl
                .functions
                .iter()
                .filter(|f| s.function(f).is_some_and(|d| d.deps.len() < s.p()))
                .collect();
            match partial.as_slice() {
                [f] => f.to_string(),
                _ => {
                    return Err(Failure::Input(
                        "name the arbitrary function with --function".into(),
                    ))
                }
            }
        }
    };
    let out = subset_variable_theorem(cl, sys, &f).map_err(|e| engine_failure(sys, e))?;
    let mut report = Report::new("subset");
    report.line(format!(
        "Law `{name}` with arbitrary function {f} of a subset of the variables."
    ));
    report.line("Function-free law:");
    report.line(format!(
        "  Div({}) = {}",
        rs(sys, &out.fluxes).join(", "),
        out.rhs.render(sys)
    ));
    report.line("  in characteristic form:");
    write_law(&mut report, sys, &out.law);
    let mut decs = Vec::new();
    for d in &out.decompositions {
        let v = s.var_name(d.index);
        report.line(format!("Flux J^{v} = Σ_j D_j T^j + Q + residual:"));
        for (j, t) in &d.t {
            report.line(format!("  T^{} = {}", s.var_name(*j), s.render(t)));
        }
        report.line(format!("  Q = {}", d.q.render(sys)));
        report.line(format!("  residual = {}", s.render(&d.residual)));
        decs.push(json!({
            "variable": v,
            "t": d.t.iter().map(|(j, t)| json!({ "variable": s.var_name(*j), "expr": s.render(t) })).collect::<Vec<_>>(),
            "q": d.q.render(sys),
            "residual": s.render(&d.residual),
        }));
    }
    report.set("law", name);
    report.set("function", f);
    report.set("fluxes", rs(sys, &out.fluxes));
    report.set("rhs", out.rhs.render(sys));
    report.set("characteristic_form", law_json(sys, &out.law));
    report.set("decompositions", decs);
    Ok(report)
}

fn cmd_catalog(name: Option<&str>, as_json: bool) -> Result<Report, Failure> {
    let mut report = Report::new("catalog");
    match name {
        None => {
            let mut list = Vec::new();
            for n in CATALOG_NAMES {
                let e = catalog_entry(n).expect("listed");
                report.line(format!("{n:<18} {}", e.summary));
                list.push(json!({ "name": n, "summary": e.summary }));
            }
            report.set("systems", list);
        }
        Some(n) => {
            let e = catalog_entry(n).ok_or_else(|| {
                Failure::Input(format!(
                    "unknown catalog system `{n}`; known: {}",
                    CATALOG_NAMES.join(", ")
                ))
            })?;
            let file = SystemFile::from_entry(&e);
            if as_json {
                report.set("system", serde_json::to_value(&file).expect("plain data"));
            } else {
                report.line(file.to_json());
            }
        }
    }
    Ok(report)
}

fn cmd_verify(entries: &[CatalogEntry], cfg: &OracleConfig) -> Result<Report, Failure> {
    let mut report = Report::new("verify");
    let mut checks = 0usize;
    let mut failed = Vec::new();
    let mut systems = Vec::new();
    for e in entries {
        let sys = &e.system;
        let s = sys.space();
        report.line(format!("{}:", e.name));
        let mut items = Vec::new();
        let mut record = |report: &mut Report, what: String, symbolic: bool, oracle: Value| {
            checks += 1;
            let ok = symbolic && oracle["passed"] == true;
            if !symbolic {
                report.fail();
                report.line(format!("  {what}: symbolic residual is nonzero"));
            }
            if !ok {
                failed.push(format!("{}/{what}", e.name));
            }
            items.push(
                json!({ "check": what, "symbolic": symbolic, "oracle": oracle, "passed": ok }),
            );
        };
        if let Some(l) = &e.lagrangian {
            if s.m() == sys.len() {
                let parts: Vec<Vec<Expr>> = s
                    .deps()
                    .map(|q| vec![euler(l, q), sys.equation(q.index()).neg()])
                    .collect();
                let symbolic = parts.iter().all(|p| p[0].add(&p[1]).is_zero());
                let flat: Vec<Expr> = parts.into_iter().flatten().collect();
                let o = oracle_line(&mut report, "E(L) = equations", verify_sum(s, &flat, cfg));
                record(&mut report, "euler-lagrange".into(), symbolic, o);
            }
            for (n, m) in &e.variation_fluxes {
                if let Some(alpha) = e.symmetry(n) {
                    let xl = prolong_apply(alpha, l);
                    let symbolic = divergence(m) == xl;
                    let o = oracle_line(
                        &mut report,
                        &format!("Div M = X L ({n})"),
                        verify_divergence(s, m, &xl, cfg),
                    );
                    record(&mut report, format!("variation/{n}"), symbolic, o);
                }
            }
        }
        for (n, cl) in &e.laws {
            let symbolic = cl.is_valid(sys);
            let o = oracle_line(
                &mut report,
                &format!("law {n}"),
                verify_conservation_law(cl, sys, cfg),
            );
            record(&mut report, format!("law/{n}"), symbolic, o);
        }
        for (n, alpha) in &e.symmetries {
            let holds = is_symmetry(sys, alpha).map(|c| c.holds).unwrap_or(false);
            report.line(format!(
                "  symmetry {n}: {}",
                if holds {
                    "holds on-shell"
                } else {
                    "does not hold on-shell"
                }
            ));
            items.push(
                json!({ "check": format!("symmetry/{n}"), "informational": true, "holds": holds }),
            );
        }
        systems.push(json!({ "name": e.name, "checks": items }));
    }
    if failed.is_empty() {
        report.line(format!("all {checks} checks passed"));
    } else {
        report.fail();
        report.line(format!(
            "{} of {checks} checks failed: {}",
            failed.len(),
            failed.join(", ")
        ));
    }
    report.set("systems", systems);
    report.set("checks", checks);
    report.set("failed", failed);
    Ok(report)
}
