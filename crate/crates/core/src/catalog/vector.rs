use crate::expr::{int, Expr, Space, VarId};
use crate::jet::total_derivative;

/// A Cartesian 3-vector of expressions over a space declaring `x`, `y`, `z`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VectorExpr(pub [Expr; 3]);

/// `ε_{ijk}` for `i, j, k ∈ {0, 1, 2}`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn axes(space: &Space) -> [VarId; 3] {
    ["x", "y", "z"].map(|n| {
        space
            .var_id(n)
            .unwrap_or_else(|| panic!("vector calculus needs a variable `{n}`"))
    })
}

impl VectorExpr {
    pub fn new(a: Expr, b: Expr, c: Expr) -> Self {
        VectorExpr([a, b, c])
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Three dependent variables `name1`, `name2`, `name3`.
    pub fn dependent(space: &Space, name: &str) -> Self {
        VectorExpr([1, 2, 3].map(|i| space.u(&format!("{name}{i}"), &[])))
    }

    pub fn component(&self, i: usize) -> &Expr {
        &self.0[i]
    }

    pub fn map(&self, mut f: impl FnMut(&Expr) -> Expr) -> Self {
        VectorExpr([f(&self.0[0]), f(&self.0[1]), f(&self.0[2])])
    }

    pub fn add(&self, o: &VectorExpr) -> Self {
        VectorExpr([0, 1, 2].map(|i| self.0[i].add(&o.0[i])))
    }

    pub fn sub(&self, o: &VectorExpr) -> Self {
        VectorExpr([0, 1, 2].map(|i| self.0[i].sub(&o.0[i])))
    }

    pub fn neg(&self) -> Self {
        self.map(Expr::neg)
    }

    pub fn scale(&self, s: &Expr) -> Self {
        self.map(|c| c.mul(s))
    }

    pub fn dot(&self, o: &VectorExpr) -> Expr {
        let parts: Vec<Expr> = (0..3).map(|i| self.0[i].mul(&o.0[i])).collect();
        Expr::sum(parts.iter())
    }

    pub fn cross(&self, o: &VectorExpr) -> Self {
        VectorExpr([0, 1, 2].map(|i| {
            let mut parts = Vec::new();
            for j in 0..3 {
                for k in 0..3 {
                    let e = levi_civita(i, j, k);
                    if e != 0 {
                        parts.push(self.0[j].mul(&o.0[k]).scale(&int(e)));
                    }
                }
            }
            Expr::sum(parts.iter())
        }))
    }

    /// Total derivative of every component.
    pub fn derivative(&self, v: VarId) -> Self {
        self.map(|c| total_derivative(c, v))
    }

    pub fn div(&self, space: &Space) -> Expr {
        let ax = axes(space);
        let parts: Vec<Expr> = (0..3)
            .map(|i| total_derivative(&self.0[i], ax[i]))
            .collect();
        Expr::sum(parts.iter())
    }

    pub fn curl(&self, space: &Space) -> Self {
        let ax = axes(space);
        VectorExpr([0, 1, 2].map(|i| {
            let mut parts = Vec::new();
            for (j, &xj) in ax.iter().enumerate() {
                for k in 0..3 {
                    let e = levi_civita(i, j, k);
                    if e != 0 {
                        parts.push(total_derivative(&self.0[k], xj).scale(&int(e)));
                    }
                }
            }
            Expr::sum(parts.iter())
        }))
    }

    pub fn laplacian(&self, space: &Space) -> Self {
        self.map(|c| laplacian(space, c))
    }
}

pub fn grad(space: &Space, f: &Expr) -> VectorExpr {
    VectorExpr(axes(space).map(|v| total_derivative(f, v)))
}

pub fn laplacian(space: &Space, f: &Expr) -> Expr {
    grad(space, f).div(space)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> Space {
        Space::new(["t", "x", "y", "z"], ["u1", "u2", "u3", "w1", "w2", "w3"])
            .unwrap()
            .with_function("F", ["t", "x", "y", "z"])
            .unwrap()
    }

    #[test]
    fn vector_identities() {
        let s = space();
        let u = VectorExpr::dependent(&s, "u");
        let w = VectorExpr::dependent(&s, "w");
        assert!(u.curl(&s).div(&s).is_zero());
        let f = s.f("F", &[]);
        assert_eq!(grad(&s, &f).curl(&s), VectorExpr::zero());
        assert!(u.cross(&w).dot(&u).is_zero());
        assert_eq!(u.cross(&w), w.cross(&u).neg());
        // curl curl = grad div - laplacian
        let lhs = u.curl(&s).curl(&s);
        let rhs = grad(&s, &u.div(&s)).sub(&u.laplacian(&s));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn components_render() {
        let s = space();
        let u = VectorExpr::dependent(&s, "u");
        assert_eq!(
            s.render(&u.div(&s)),
            s.render(&s.parse("u1_x + u2_y + u3_z").unwrap())
        );
        assert_eq!(u.curl(&s).0[0], s.parse("u3_y - u2_z").unwrap());
    }
}
