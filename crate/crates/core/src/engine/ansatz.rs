use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::expr::{Atom, Expr, JetAtom, Monomial, MultiIndex, Rational};
use crate::jet::euler;

use super::reduce::on_shell_reduce;
use super::{DifferentialSystem, EngineError};

/// Bounds of the polynomial ansatz for multipliers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiplierAnsatz {
    /// Highest jet order of a candidate atom.
    pub order: usize,
    /// Highest total degree of a candidate monomial.
    pub degree: u32,
    /// Whether independent variables may appear.
    pub explicit: bool,
}

/// Basis of the multipliers `β` in the ansatz space for which
/// `A = β^a Δ_a` is an alternative Lagrangian, i.e. `E(A)` vanishes on-shell.
///
/// Candidates are built from parametric atoms only, so no nonzero result
/// vanishes on-shell. Each basis vector has one entry per equation.
pub fn multiplier_search(
    sys: &DifferentialSystem,
    ansatz: &MultiplierAnsatz,
) -> Result<Vec<Vec<Expr>>, EngineError> {
    let monomials = candidate_monomials(sys, ansatz);
    let n = sys.len();
    let unknowns: Vec<(usize, &Expr)> = (0..n)
        .flat_map(|a| monomials.iter().map(move |m| (a, m)))
        .collect();

    let mut rows: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut columns = Vec::with_capacity(unknowns.len());
    for (a, mono) in &unknowns {
        let lagrangian = mono.mul(sys.equation(*a));
        let mut col = Vec::new();
        for q in sys.space().deps() {
            let reduced = on_shell_reduce(&euler(&lagrangian, q), sys)?;
            for t in reduced.terms() {
                let next = rows.len();
                let r = *rows.entry((q.0 as usize, t.mono.clone())).or_insert(next);
                col.push((r, t.coeff.clone()));
            }
        }
        columns.push(col);
    }

    let mut matrix = vec![vec![Rational::zero(); unknowns.len()]; rows.len()];
    for (k, col) in columns.into_iter().enumerate() {
        for (r, c) in col {
            matrix[r][k] += c;
        }
    }

    Ok(nullspace(matrix, unknowns.len())
        .into_iter()
        .map(|v| {
            let mut beta = vec![Expr::zero(); n];
            for ((a, mono), c) in unknowns.iter().zip(&v) {
                if !c.is_zero() {
                    beta[*a] = beta[*a].add(&mono.scale(c));
                }
            }
            beta
        })
        .collect())
}

fn is_principal(sys: &DifferentialSystem, j: &JetAtom) -> bool {
    (0..sys.len()).any(|a| {
        let lead = sys.leading(a);
        lead.dep == j.dep && j.index.contains(&lead.index)
    })
}

fn indices_up_to(p: usize, order: usize) -> Vec<MultiIndex> {
    let mut out = vec![MultiIndex::empty()];
    let mut frontier = out.clone();
    for _ in 0..order {
        let mut next = Vec::new();
        for j in &frontier {
            for v in 0..p {
                let k = j.add(&MultiIndex::single(crate::expr::VarId(v as u8)));
                if !next.contains(&k) {
                    next.push(k);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn candidate_monomials(sys: &DifferentialSystem, ansatz: &MultiplierAnsatz) -> Vec<Expr> {
    let s = sys.space();
    let mut atoms: Vec<Expr> = Vec::new();
    if ansatz.explicit {
        atoms.extend(s.vars().map(Expr::var));
    }
    for q in s.deps() {
        for j in indices_up_to(s.p(), ansatz.order) {
            let jet = JetAtom::new(q, j);
            if !is_principal(sys, &jet) {
                atoms.push(Expr::atom(Atom::Jet(jet)));
            }
        }
    }
    let mut out = vec![Expr::one()];
    let mut layer = vec![(Expr::one(), 0usize)];
    for _ in 0..ansatz.degree {
        let mut next = Vec::new();
        for (m, start) in &layer {
            for (k, a) in atoms.iter().enumerate().skip(*start) {
                next.push((m.mul(a), k));
            }
        }
        out.extend(next.iter().map(|(m, _)| m.clone()));
        layer = next;
    }
    out
}

/// Basis of `{x : Mx = 0}` by Gauss-Jordan elimination.
fn nullspace(mut m: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row && !line[col].is_zero() {
                let f = line[col].clone();
                for (x, y) in line[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= y * &f;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::check_alternative_lagrangian;
    use crate::expr::Space;

    fn kdv() -> DifferentialSystem {
        let s = Space::new(["t", "x"], ["u"]).unwrap();
        let eq = s.parse("u_t + u*u_x + u_xxx").unwrap();
        DifferentialSystem::new(s, vec![eq]).unwrap()
    }

    fn in_span(basis: &[Vec<Expr>], target: &Expr) -> bool {
        let cols: Vec<&Expr> = basis.iter().map(|b| &b[0]).chain([target]).collect();
        let mut keys: Vec<Monomial> = Vec::new();
        for e in &cols {
            for t in e.terms() {
                if !keys.contains(&t.mono) {
                    keys.push(t.mono.clone());
                }
            }
        }
        let m = keys
            .iter()
            .map(|k| {
                cols.iter()
                    .map(|e| {
                        e.terms()
                            .iter()
                            .find(|t| &t.mono == k)
                            .map_or_else(Rational::zero, |t| t.coeff.clone())
                    })
                    .collect()
            })
            .collect();
        nullspace(m, cols.len()).len() == 1
    }

    #[test]
    fn kdv_low_order_multipliers() {
        let sys = kdv();
        let s = sys.space();
        let basis = multiplier_search(
            &sys,
            &MultiplierAnsatz {
                order: 0,
                degree: 2,
                explicit: true,
            },
        )
        .unwrap();
        for b in &basis {
            let a = b[0].mul(sys.equation(0));
            assert!(check_alternative_lagrangian(&sys, &a).is_ok(), "{:?}", b);
        }
        assert_eq!(basis.len(), 3, "{basis:?}");
        for want in ["1", "u", "x - t*u"] {
            assert!(in_span(&basis, &s.parse(want).unwrap()), "{want}");
        }
        assert!(!in_span(&basis, &s.parse("u^2").unwrap()));
    }

    #[test]
    fn kdv_energy_multiplier_needs_second_order() {
        let sys = kdv();
        let s = sys.space();
        let basis = multiplier_search(
            &sys,
            &MultiplierAnsatz {
                order: 2,
                degree: 2,
                explicit: false,
            },
        )
        .unwrap();
        assert!(
            in_span(&basis, &s.parse("u^2/2 + u_xx").unwrap()),
            "{basis:?}"
        );
        assert!(in_span(&basis, &s.parse("1").unwrap()));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![vec![Rational::one(), Rational::one(), Rational::zero()]];
        let ns = nullspace(m, 3);
        assert_eq!(ns.len(), 2);
    }
}
