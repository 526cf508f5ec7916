//! Grades the Russell cubic `x + x^2 y + z^2 + t^3` and splits an element
//! into its canonical parts.

use exotic::grading::{
    associated_graded_hypersurface, canonical_form_decomposition, russell_order, russell_relation,
    russell_ring, russell_vars, russell_weight, GradedQuotient,
};
use exotic::polyring::poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = russell_vars();
    let w = russell_weight();
    let graded = associated_graded_hypersurface(&russell_relation(), &w, &russell_order())?;
    println!(
        "gr A = Q[x,y,z,t] / ({}), {:?}",
        graded.relation_top, graded.status
    );

    let q = russell_ring();
    let parts = canonical_form_decomposition(&poly("x^2*y", &v), &q)?;
    println!(
        "x^2 y = a + y b + x y c with a = {}, b = {}, c = {}",
        parts.a, parts.b, parts.c
    );

    let gq = GradedQuotient::new(q, &w)?;
    for e in ["x", "y", "x*y", "x^2*y", "z + y"] {
        let f = poly(e, &v);
        println!("deg {e} = {}, gr = {}", gq.degree(&f)?, gq.gr(&f)?);
    }
    Ok(())
}
