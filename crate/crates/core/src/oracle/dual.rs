use crate::expr::{EvalError, Rational, Scalar};

/// `value + eps·ε` with `ε² = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub value: f64,
    pub eps: f64,
}

impl Dual {
    pub fn new(value: f64, eps: f64) -> Self {
        Dual { value, eps }
    }
}

impl Scalar for Dual {
    fn from_rational(r: &Rational) -> Self {
        Dual::new(f64::from_rational(r), 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        Dual::new(self.value + o.value, self.eps + o.eps)
    }
    fn mul(&self, o: &Self) -> Self {
        Dual::new(
            self.value * o.value,
            self.value * o.eps + self.eps * o.value,
        )
    }
    fn exp(&self) -> Self {
        let e = self.value.exp();
        Dual::new(e, e * self.eps)
    }
    fn sin(&self) -> Self {
        Dual::new(self.value.sin(), self.value.cos() * self.eps)
    }
    fn cos(&self) -> Self {
        Dual::new(self.value.cos(), -self.value.sin() * self.eps)
    }
    fn ln(&self) -> Result<Self, EvalError> {
        Ok(Dual::new(Scalar::ln(&self.value)?, self.eps / self.value))
    }
    fn recip(&self) -> Result<Self, EvalError> {
        let r = Scalar::recip(&self.value)?;
        Ok(Dual::new(r, -self.eps * r * r))
    }
}
