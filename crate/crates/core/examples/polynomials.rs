//! Exact polynomial arithmetic over Q: parsing, division, gcd and
//! Jacobians.

use exotic::polyring::{divide, gcd, jacobian_det, parse_polynomial, MonomialOrder, VarSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = VarSet::new(["x", "y", "z"])?;
    let f = parse_polynomial("(x + y)^3 - 1/2*z", &v)?;
    let d = parse_polynomial("x + y", &v)?;
    println!("f = {f}");

    let (q, r) = divide(&f, &d, &MonomialOrder::GradedLex, 10_000)?;
    println!("f = ({q}) * ({d}) + ({r})");

    let a = parse_polynomial("x^2 - y^2", &v)?;
    let b = parse_polynomial("x^2 + 2*x*y + y^2", &v)?;
    println!("gcd({a}, {b}) = {}", gcd(&a, &b)?);

    // a polynomial automorphism of the plane has constant Jacobian
    let w = VarSet::new(["x", "y"])?;
    let phi = [parse_polynomial("x + y^2", &w)?, parse_polynomial("y", &w)?];
    println!("jacobian of (x + y^2, y) = {}", jacobian_det(&phi)?);
    Ok(())
}
