//! The JSON system-definition format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;
use crate::engine::{ConservationLaw, DifferentialSystem};
use crate::expr::{Atom, Expr, JetAtom, Space};
use crate::jet::EvolutionaryVectorField;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
    pub independent: Vec<String>,
    pub dependent: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functions: Vec<FunctionSpec>,
    pub equations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation_names: Option<Vec<String>>,
    /// Leading jet atom per equation; the default ranking otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranking: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lagrangian: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternative: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multipliers: Option<Vec<String>>,
    /// Evolutionary fields, one component per dependent variable.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub symmetries: BTreeMap<String, Vec<String>>,
    /// Fluxes `M` with `D_i M^i = X_α L`, keyed by symmetry.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub variation_fluxes: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub laws: BTreeMap<String, LawSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    pub name: String,
    pub deps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawSpec {
    pub fluxes: Vec<String>,
    pub characteristic: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{context}: {message}")]
pub struct InputError {
    pub context: String,
    pub message: String,
}

fn input_err(context: impl Into<String>, message: impl ToString) -> InputError {
    InputError {
        context: context.into(),
        message: message.to_string(),
    }
}

fn parse_all(space: &Space, items: &[String], context: &str) -> Result<Vec<Expr>, InputError> {
    items
        .iter()
        .enumerate()
        .map(|(k, s)| {
            space
                .parse(s)
                .map_err(|e| input_err(format!("{context}[{k}] `{s}`"), e))
        })
        .collect()
}

fn parse_one(space: &Space, item: &str, context: &str) -> Result<Expr, InputError> {
    space
        .parse(item)
        .map_err(|e| input_err(format!("{context} `{item}`"), e))
}

fn parse_jet(space: &Space, item: &str) -> Result<JetAtom, InputError> {
    match parse_one(space, item, "ranking")?.as_atom() {
        Some(Atom::Jet(j)) => Ok(j.clone()),
        _ => Err(input_err(
            format!("ranking `{item}`"),
            "not a derivative of a dependent variable",
        )),
    }
}

impl SystemFile {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| input_err("system file", e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn space(&self) -> Result<Space, InputError> {
        let mut s = Space::new(&self.independent, &self.dependent)
            .map_err(|e| input_err("declarations", e))?;
        for p in &self.parameters {
            s = s
                .with_parameter(p)
                .map_err(|e| input_err("parameters", e))?;
        }
        for f in &self.functions {
            s = s
                .with_function(&f.name, &f.deps)
                .map_err(|e| input_err("functions", e))?;
        }
        Ok(s)
    }

    /// Parses every declared object.
    pub fn load(&self, order_cap: Option<usize>) -> Result<CatalogEntry, InputError> {
        let space = self.space()?;
        let equations = parse_all(&space, &self.equations, "equations")?;
        let mut system = match &self.ranking {
            Some(r) => {
                let lead = r
                    .iter()
                    .map(|s| parse_jet(&space, s))
                    .collect::<Result<Vec<_>, _>>()?;
                DifferentialSystem::with_ranking(space.clone(), equations, lead)
            }
            None => DifferentialSystem::new(space.clone(), equations),
        }
        .map_err(|e| input_err("ranking", e))?;
        if let Some(names) = &self.equation_names {
            system = system
                .with_names(names)
                .map_err(|e| input_err("equation_names", e))?;
        }
        if let Some(cap) = order_cap {
            system = system.with_order_cap(cap);
        }
        let mut entry = CatalogEntry::new(
            self.name.clone().unwrap_or_else(|| "system".into()),
            self.summary.clone().unwrap_or_default(),
            system,
        );
        let m = space.m();
        let p = space.p();
        let n = entry.system.len();
        entry.lagrangian = self
            .lagrangian
            .as_deref()
            .map(|l| parse_one(&space, l, "lagrangian"))
            .transpose()?;
        entry.alternative = self
            .alternative
            .as_deref()
            .map(|l| parse_one(&space, l, "alternative"))
            .transpose()?;
        entry.multipliers = self
            .multipliers
            .as_ref()
            .map(|b| parse_all(&space, b, "multipliers"))
            .transpose()?;
        for (name, comps) in &self.symmetries {
            let c = parse_all(&space, comps, &format!("symmetries.{name}"))?;
            if c.len() != m {
                return Err(input_err(
                    format!("symmetries.{name}"),
                    format!("expected {m} components"),
                ));
            }
            entry
                .symmetries
                .push((name.clone(), EvolutionaryVectorField::new(c)));
        }
        for (name, fl) in &self.variation_fluxes {
            let c = parse_all(&space, fl, &format!("variation_fluxes.{name}"))?;
            if c.len() != p {
                return Err(input_err(
                    format!("variation_fluxes.{name}"),
                    format!("expected {p} fluxes"),
                ));
            }
            entry.variation_fluxes.push((name.clone(), c));
        }
        for (name, law) in &self.laws {
            let fluxes = parse_all(&space, &law.fluxes, &format!("laws.{name}.fluxes"))?;
            let xi = parse_all(
                &space,
                &law.characteristic,
                &format!("laws.{name}.characteristic"),
            )?;
            if fluxes.len() != p || xi.len() != n {
                return Err(input_err(
                    format!("laws.{name}"),
                    format!("expected {p} fluxes and {n} characteristic components"),
                ));
            }
            entry
                .laws
                .push((name.clone(), ConservationLaw::new(fluxes, xi)));
        }
        Ok(entry)
    }

    /// Serializable form of a catalog entry.
    pub fn from_entry(e: &CatalogEntry) -> Self {
        let sys = &e.system;
        let s = sys.space();
        let r = |x: &Expr| s.render(x);
        let rs = |xs: &[Expr]| xs.iter().map(r).collect::<Vec<_>>();
        SystemFile {
            name: Some(e.name.clone()),
            summary: (!e.summary.is_empty()).then(|| e.summary.clone()),
            independent: s.independent().to_vec(),
            dependent: s.dependent().to_vec(),
            parameters: s.parameters().to_vec(),
            functions: s
                .functions()
                .iter()
                .map(|f| FunctionSpec {
                    name: f.name.to_string(),
                    deps: f.deps.iter().map(|v| s.var_name(v).to_string()).collect(),
                })
                .collect(),
            equations: rs(sys.equations()),
            equation_names: Some(sys.names().iter().map(|n| n.to_string()).collect()),
            ranking: Some(
                (0..sys.len())
                    .map(|a| s.render_jet(sys.leading(a)))
                    .collect(),
            ),
            lagrangian: e.lagrangian.as_ref().map(r),
            alternative: e.alternative.as_ref().map(r),
            multipliers: e.multipliers.as_deref().map(rs),
            symmetries: e
                .symmetries
                .iter()
                .map(|(n, f)| (n.clone(), rs(&f.components)))
                .collect(),
            variation_fluxes: e
                .variation_fluxes
                .iter()
                .map(|(n, m)| (n.clone(), rs(m)))
                .collect(),
            laws: e
                .laws
                .iter()
                .map(|(n, l)| {
                    (
                        n.clone(),
                        LawSpec {
                            fluxes: rs(&l.fluxes),
                            characteristic: rs(&l.characteristic),
                        },
                    )
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_entry, CATALOG_NAMES};

    #[test]
    fn catalog_round_trips_through_json() {
        for name in CATALOG_NAMES {
            let e = catalog_entry(name).unwrap();
            let file = SystemFile::from_entry(&e);
            let back = SystemFile::from_json(&file.to_json())
                .unwrap()
                .load(None)
                .unwrap();
            assert_eq!(back.system.equations(), e.system.equations(), "{name}");
            for a in 0..e.system.len() {
                assert_eq!(back.system.leading(a), e.system.leading(a));
            }
            for (n, law) in &e.laws {
                assert_eq!(back.law(n), Some(law), "{name}/{n}");
            }
            for (n, f) in &e.symmetries {
                assert_eq!(back.symmetry(n), Some(f));
            }
        }
    }

    #[test]
    fn unknown_names_are_input_errors() {
        let f = SystemFile::from_json(
            r#"{"independent":["t","x"],"dependent":["u"],"equations":["u_t + w"]}"#,
        )
        .unwrap();
        let err = f.load(None).unwrap_err();
        assert!(err.to_string().contains("equations[0]"));
        assert!(SystemFile::from_json(
            r#"{"independent":[],"dependent":[],"equations":[],"bogus":1}"#
        )
        .is_err());
    }
}
