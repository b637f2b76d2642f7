use crate::expr::{int, Atom, DepId, Expr, Factor, Monomial, Term, VarId};

use super::{euler, noether_r_all, EvolutionaryVectorField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReconstructError {
    #[error("not a total divergence: Euler operator does not vanish for dependent variable {0}")]
    NotADivergence(usize),
    #[error("expression is outside the supported class: {0}")]
    UnsupportedClass(&'static str),
}

/// Fluxes `M` with `Σ_i D_i M^i = e`, for `e` polynomial in the jet
/// coordinates with vanishing Euler operators.
///
/// The jet-dependent part uses the homotopy `u -> λu`: with `G^i = R^i_u(e)`
/// every monomial of jet degree `d` in `G^i` is weighted by `1/d`. The part
/// free of jet coordinates is integrated directly.
pub fn divergence_reconstruct(e: &Expr, p: usize, m: usize) -> Result<Vec<Expr>, ReconstructError> {
    for q in 0..m {
        if !euler(e, DepId(q as u8)).is_zero() {
            return Err(ReconstructError::NotADivergence(q));
        }
    }
    if !e.is_jet_polynomial() {
        return Err(ReconstructError::UnsupportedClass(
            "not polynomial in the jet coordinates",
        ));
    }
    let is_jet = |a: &Atom| matches!(a, Atom::Jet(_));
    let (mut free, mut jet) = (Vec::new(), Vec::new());
    for t in e.terms() {
        if t.mono.degree_in(&is_jet) == Some(0) {
            free.push(t.clone());
        } else {
            jet.push(t.clone());
        }
    }
    let jet = Expr::from_terms(jet);
    let identity = EvolutionaryVectorField::new(
        (0..m)
            .map(|q| Expr::jet(DepId(q as u8), Default::default()))
            .collect(),
    );
    let mut fluxes: Vec<Expr> = noether_r_all(&identity, p, &jet)
        .into_iter()
        .map(|g| {
            let terms: Vec<Term> = g
                .terms()
                .iter()
                .map(|t| {
                    let d = t.mono.degree_in(&is_jet).expect("jet polynomial") as i64;
                    Term {
                        mono: t.mono.clone(),
                        coeff: &t.coeff / int(d),
                    }
                })
                .collect();
            Expr::from_terms(terms)
        })
        .collect();
    for t in &free {
        let (i, flux) = integrate_free_term(t, p)?;
        fluxes[i] = &fluxes[i] + &flux;
    }
    Ok(fluxes)
}

fn depends_on(f: &Factor, v: VarId) -> bool {
    let hit = |a: &Atom| match a {
        Atom::Var(w) => *w == v,
        Atom::Fn(g) => g.deps.contains(v),
        _ => false,
    };
    match f {
        Factor::Atom(a) => hit(a),
        Factor::Apply(_, arg) | Factor::Group(arg) => arg.any_atom(&hit),
    }
}

/// Integrates one jet-free term in some variable it depends on
/// polynomially, or treats `c·D_J f` as `D_i(c·D_{J-i} f)`.
fn integrate_free_term(t: &Term, p: usize) -> Result<(usize, Expr), ReconstructError> {
    let factors = t.mono.factors();
    for i in 0..p {
        let v = VarId(i as u8);
        let mut power = 0;
        let mut pos = None;
        let mut ok = true;
        for (k, (f, e)) in factors.iter().enumerate() {
            if *f == Factor::Atom(Atom::Var(v)) && *e > 0 {
                power = *e;
                pos = Some(k);
            } else if depends_on(f, v) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let rest = match pos {
            Some(k) => t.mono.with_exponent_shift(k, -power),
            None => t.mono.clone(),
        };
        let mono = rest.mul(&Monomial::single(Factor::Atom(Atom::Var(v)), power + 1));
        return Ok((i, Expr::term(mono, &t.coeff / int(power as i64 + 1))));
    }
    // A single derivative of an arbitrary function with a constant cofactor.
    let mut target = None;
    for (k, (f, e)) in factors.iter().enumerate() {
        match f {
            Factor::Atom(Atom::Fn(g)) if *e == 1 && !g.index.is_empty() && target.is_none() => {
                target = Some((k, g.clone()));
            }
            _ if (0..p).any(|i| depends_on(f, VarId(i as u8))) => {
                return Err(ReconstructError::UnsupportedClass(
                    "jet-free term is not integrable in closed form",
                ));
            }
            _ => {}
        }
    }
    let (k, g) = target.ok_or(ReconstructError::UnsupportedClass(
        "jet-free term is not integrable in closed form",
    ))?;
    let v = g.index.sequence()[0];
    let lowered = crate::expr::ArbFnAtom::new(g.name.clone(), g.deps, g.index.lower(v).unwrap());
    let rest = t.mono.with_exponent_shift(k, -1);
    let mono = rest.mul(&Monomial::single(Factor::Atom(Atom::Fn(lowered)), 1));
    Ok((v.index(), Expr::term(mono, t.coeff.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Space;
    use crate::jet::divergence;

    #[test]
    fn single_variable_flux() {
        let s = Space::new(["x"], ["u"]).unwrap();
        let e = s.parse("u_x*u_xx").unwrap();
        let m = divergence_reconstruct(&e, 1, 1).unwrap();
        assert_eq!(m, vec![s.parse("1/2*u_x^2").unwrap()]);
    }

    #[test]
    fn round_trips() {
        let s = Space::new(["t", "x"], ["u"])
            .unwrap()
            .with_function("f", ["t", "x"])
            .unwrap();
        for text in [
            "u_t*u_x + u*u_tx",
            "x*u_x + u + t^2",
            "f_tx + u_t*f + u*f_t",
            "x*u_xxt*u - t*u_x",
        ] {
            let e = s.parse(text).unwrap();
            let e = if text.starts_with("x*u_xxt") {
                crate::jet::total_derivative(&e, VarId(1))
            } else {
                e
            };
            let m = divergence_reconstruct(&e, 2, 1).unwrap();
            assert_eq!(divergence(&m), e, "{text}");
        }
    }

    #[test]
    fn obstructions() {
        let s = Space::new(["t", "x"], ["u"]).unwrap();
        let e = s.parse("u*u_x + u").unwrap();
        assert_eq!(
            divergence_reconstruct(&e, 2, 1),
            Err(ReconstructError::NotADivergence(0))
        );
        let e = s.parse("u*u_x + 1").unwrap();
        let m = divergence_reconstruct(&e, 2, 1).unwrap();
        assert_eq!(divergence(&m), e);
        let e = s.parse("u_x*exp(u)").unwrap();
        assert!(matches!(
            divergence_reconstruct(&e, 2, 1),
            Err(ReconstructError::UnsupportedClass(_))
        ));
    }
}
