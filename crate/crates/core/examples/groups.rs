//! Finitely presented groups: abelianizations, Smith normal form and the
//! Brieskorn-type presentations.

use exotic::fpgroups::{
    abelianization, bezout_alpha, derived_subgroup_h1, named_presentation, smith_normal_form_i64,
    triangle_classification, NamedPresentation, DEFAULT_INDEX_LIMIT,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = smith_normal_form_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    println!("invariant factors: {:?}", f.invariant_factors());

    for (k, l, s) in [(2, 3, 5), (2, 3, 7), (2, 5, 7)] {
        let g = named_presentation(&NamedPresentation::Gkls { k, l, s })?;
        println!(
            "G_({k},{l},{s}) = {g}: H1 = {}, H1([G,G]) = {}, {:?}",
            abelianization(&g),
            derived_subgroup_h1(&g, DEFAULT_INDEX_LIMIT)?,
            triangle_classification(k, l, s)?,
        );
    }

    let (p, q, _) = bezout_alpha(3, 5)?;
    println!("3*({p}) + 5*({q}) = 1");
    let b = named_presentation(&NamedPresentation::Bkls { k: 3, l: 5, s: 4 })?;
    println!("{b}: H1 = {}", abelianization(&b));
    Ok(())
}
