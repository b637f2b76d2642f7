//! Total derivatives, Euler operators, prolongations and the homotopy
//! inversion of a divergence on a small jet space.

use noether::expr::{DepId, Space};
use noether::jet::{
    divergence_reconstruct, euler, noether_r_all, prolong_apply, total_derivative,
    EvolutionaryVectorField,
};

fn main() {
    let s = Space::new(["t", "x"], ["u"]).unwrap();
    let x = s.var_id("x").unwrap();
    let u = DepId(0);

    let f = s.parse("u*u_x^2 + sin(u_t)").unwrap();
    println!("f        = {}", s.render(&f));
    println!("D_x f    = {}", s.render(&total_derivative(&f, x)));
    println!("E_u(f)   = {}", s.render(&euler(&f, u)));

    // Divergences lie in the kernel of the Euler operator.
    let d = total_derivative(&s.parse("u*u_t + exp(u_x)").unwrap(), x);
    println!("E_u(D_x(u*u_t + exp(u_x))) = {}", s.render(&euler(&d, u)));

    // X_α f = α E_u(f) + D_i R^i, checked symbolically.
    let alpha = EvolutionaryVectorField::new(vec![s.parse("x*u_x + 2*u").unwrap()]);
    let lhs = prolong_apply(&alpha, &f);
    let r = noether_r_all(&alpha, s.p(), &f);
    let mut rhs = alpha.component(u).mul(&euler(&f, u));
    for (i, ri) in r.iter().enumerate() {
        rhs = rhs.add(&total_derivative(ri, noether::expr::VarId(i as u8)));
    }
    println!(
        "X_alpha f - (alpha E(f) + Div R) = {}",
        s.render(&lhs.sub(&rhs))
    );

    let g = s.parse("u*u_x + u_x*u_xx").unwrap();
    let fluxes = divergence_reconstruct(&g, s.p(), s.m()).unwrap();
    println!(
        "{} = Div({})",
        s.render(&g),
        fluxes
            .iter()
            .map(|k| s.render(k))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let bad = s.parse("u*u_x + u").unwrap();
    println!(
        "{} is a divergence: {}",
        s.render(&bad),
        divergence_reconstruct(&bad, s.p(), s.m()).is_ok()
    );
}
