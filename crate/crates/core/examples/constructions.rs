//! Hypersurface families, modifications and torus weights.

use exotic::constructions::{
    affine_modification_equations, family, hyperbolic_identity_check, hyperbolic_modification,
    quasi_invariance_check, Family, TorusWeights,
};
use exotic::polyring::{poly, VarSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for f in [
        Family::KorasRussell {
            s1: 1,
            s2: 2,
            s3: 3,
        },
        Family::Tdp { k: 3, l: 2 },
        Family::Danielewski { n: 2 },
    ] {
        let x = family(&f)?;
        println!("{}: {} = 0", f.name(), x.defining());
    }

    let kr = family(&Family::KorasRussell {
        s1: 2,
        s2: 3,
        s3: 5,
    })?;
    let w = TorusWeights::from_vec(kr.ambient(), vec![30, -15, 10, 6])?;
    println!(
        "weight of the Koras-Russell polynomial: {:?}",
        quasi_invariance_check(kr.defining(), &w)?
    );

    let v = VarSet::new(["x", "y"])?;
    let h = poly("x^2 - y^3 + x*y", &v);
    println!(
        "hyperbolic modification of {h}: {}",
        hyperbolic_modification(&h)?
    );
    println!("identities: {:?}", hyperbolic_identity_check(&h)?);

    let v = VarSet::new(["x", "z", "t"])?;
    let sys = affine_modification_equations(&poly("-x^2", &v), &[poly("x + z^2 + t^3", &v)])?;
    println!("affine modification: {} = 0", sys.equations()[0]);
    Ok(())
}
