//! Middle terms of self-extensions of `M_2` along lines of `Ext^1`, each
//! split into indecomposables and labelled by forward parts.

use num_rational::BigRational;
use preproj::components::rng_stream;
use preproj::leclerc::{build_fixture, census_of};

fn main() -> preproj::Result<()> {
    let fx = build_fixture(&BigRational::from_integer(2.into()))?;
    let mut rng = rng_stream(7, 0);
    let census = census_of(&fx, &mut rng)?;
    println!("dim Ext^1(M_2, M_2) = {}", census.ext_dim);
    for e in &census.entries {
        let labels: Vec<String> = e
            .summand_labels
            .iter()
            .map(|l| fx.roots.as_ref().describe_vec(l))
            .collect();
        println!(
            "class ({}) -> dims {:?}, {} summand(s): {}{}",
            e.class.join(", "),
            e.dims,
            e.summand_dims.len(),
            labels.join(" | "),
            if e.indecomposable { "  [indecomposable]" } else { "" }
        );
    }
    Ok(())
}
