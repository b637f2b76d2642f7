use std::sync::Arc;

use super::canon::{ArbFnAtom, Expr, JetAtom};
use super::index::{DepId, MultiIndex, VarId, VarSet};
use super::parse::{self, ParseError};
use super::render;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionDecl {
    pub name: Arc<str>,
    pub deps: VarSet,
}

/// Variable declarations shared by every expression of one problem:
/// independent variables, dependent variables, named parameters and
/// arbitrary functions of subsets of the independent variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Space {
    independent: Vec<String>,
    dependent: Vec<String>,
    parameters: Vec<String>,
    functions: Vec<FunctionDecl>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DeclarationError {
    #[error("identifier `{0}` is declared twice")]
    Duplicate(String),
    #[error("`{0}` is not a valid identifier")]
    BadName(String),
    #[error("function `{function}` depends on undeclared variable `{var}`")]
    UnknownDependency { function: String, var: String },
    #[error("too many independent variables (at most 32)")]
    TooManyVariables,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
        && name != "D"
        && super::canon::Func::from_name(name).is_none()
}

impl Space {
    pub fn new<I, D>(independent: I, dependent: D) -> Result<Self, DeclarationError>
    where
        I: IntoIterator,
        I::Item: Into<String>,
        D: IntoIterator,
        D::Item: Into<String>,
    {
        let mut s = Space::default();
        for v in independent {
            s.declare_independent(v.into())?;
        }
        for v in dependent {
            s.declare_dependent(v.into())?;
        }
        Ok(s)
    }

    fn check_fresh(&self, name: &str) -> Result<(), DeclarationError> {
        if !valid_name(name) {
            return Err(DeclarationError::BadName(name.to_string()));
        }
        let taken = self.independent.iter().any(|n| n == name)
            || self.dependent.iter().any(|n| n == name)
            || self.parameters.iter().any(|n| n == name)
            || self.functions.iter().any(|f| &*f.name == name);
        if taken {
            return Err(DeclarationError::Duplicate(name.to_string()));
        }
        Ok(())
    }

    fn declare_independent(&mut self, name: String) -> Result<(), DeclarationError> {
        self.check_fresh(&name)?;
        if self.independent.len() == 32 {
            return Err(DeclarationError::TooManyVariables);
        }
        self.independent.push(name);
        Ok(())
    }

    fn declare_dependent(&mut self, name: String) -> Result<(), DeclarationError> {
        self.check_fresh(&name)?;
        self.dependent.push(name);
        Ok(())
    }

    pub fn with_parameter(mut self, name: impl Into<String>) -> Result<Self, DeclarationError> {
        let name = name.into();
        self.check_fresh(&name)?;
        self.parameters.push(name);
        Ok(self)
    }

    pub fn with_function<I>(
        mut self,
        name: impl Into<String>,
        deps: I,
    ) -> Result<Self, DeclarationError>
    where
        I: IntoIterator,
        I::Item: AsRef<str>,
    {
        let name = name.into();
        self.check_fresh(&name)?;
        let mut set = VarSet::EMPTY;
        for d in deps {
            let v = self
                .var_id(d.as_ref())
                .ok_or_else(|| DeclarationError::UnknownDependency {
                    function: name.clone(),
                    var: d.as_ref().to_string(),
                })?;
            set = set.with(v);
        }
        self.functions.push(FunctionDecl {
            name: name.into(),
            deps: set,
        });
        Ok(self)
    }

    pub fn independent(&self) -> &[String] {
        &self.independent
    }

    pub fn dependent(&self) -> &[String] {
        &self.dependent
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn functions(&self) -> &[FunctionDecl] {
        &self.functions
    }

    /// Number of independent variables.
    pub fn p(&self) -> usize {
        self.independent.len()
    }

    /// Number of dependent variables.
    pub fn m(&self) -> usize {
        self.dependent.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> {
        (0..self.p() as u8).map(VarId)
    }

    pub fn deps(&self) -> impl Iterator<Item = DepId> {
        (0..self.m() as u8).map(DepId)
    }

    pub fn all_vars(&self) -> VarSet {
        VarSet::all(self.p())
    }

    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.independent
            .iter()
            .position(|n| n == name)
            .map(|i| VarId(i as u8))
    }

    pub fn dep_id(&self, name: &str) -> Option<DepId> {
        self.dependent
            .iter()
            .position(|n| n == name)
            .map(|i| DepId(i as u8))
    }

    pub fn function(&self, name: &str) -> Option<&FunctionDecl> {
        self.functions.iter().find(|f| &*f.name == name)
    }

    pub fn has_parameter(&self, name: &str) -> bool {
        self.parameters.iter().any(|n| n == name)
    }

    pub fn var_name(&self, v: VarId) -> &str {
        &self.independent[v.index()]
    }

    pub fn dep_name(&self, q: DepId) -> &str {
        &self.dependent[q.index()]
    }

    fn index_of(&self, vars: &[&str]) -> MultiIndex {
        MultiIndex::from_vars(vars.iter().map(|v| {
            self.var_id(v)
                .unwrap_or_else(|| panic!("undeclared independent variable `{v}`"))
        }))
    }

    /// The independent variable `name` as an expression. Panics if undeclared.
    pub fn x(&self, name: &str) -> Expr {
        Expr::var(
            self.var_id(name)
                .unwrap_or_else(|| panic!("undeclared independent variable `{name}`")),
        )
    }

    /// The jet coordinate of `dep` differentiated along `vars`. Panics if undeclared.
    pub fn u(&self, dep: &str, vars: &[&str]) -> Expr {
        Expr::jet(self.jet_dep(dep), self.index_of(vars))
    }

    pub fn jet_atom(&self, dep: &str, vars: &[&str]) -> JetAtom {
        JetAtom::new(self.jet_dep(dep), self.index_of(vars))
    }

    fn jet_dep(&self, dep: &str) -> DepId {
        self.dep_id(dep)
            .unwrap_or_else(|| panic!("undeclared dependent variable `{dep}`"))
    }

    /// `D_J f` for a declared arbitrary function. Panics if undeclared or if
    /// `vars` leaves the function's dependencies.
    pub fn f(&self, name: &str, vars: &[&str]) -> Expr {
        Expr::arbfn(self.fn_atom(name, vars))
    }

    pub fn fn_atom(&self, name: &str, vars: &[&str]) -> ArbFnAtom {
        let decl = self
            .function(name)
            .unwrap_or_else(|| panic!("undeclared function `{name}`"));
        let index = self.index_of(vars);
        assert!(
            index.support().is_subset(decl.deps),
            "derivative of `{name}` outside its dependencies"
        );
        ArbFnAtom::new(decl.name.clone(), decl.deps, index)
    }

    pub fn param(&self, name: &str) -> Expr {
        assert!(self.has_parameter(name), "undeclared parameter `{name}`");
        Expr::param(name)
    }

    pub fn parse(&self, text: &str) -> Result<Expr, ParseError> {
        parse::parse(text, self)
    }

    /// Deterministic text form, accepted back by [`Space::parse`].
    pub fn render(&self, e: &Expr) -> String {
        render::render(e, self)
    }

    pub fn render_jet(&self, j: &JetAtom) -> String {
        render::render_jet(j, self)
    }
}
