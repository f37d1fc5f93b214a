//! Canonical decompositions of components and the direct-sum criterion.

use preproj::calculus::{canonical_decomposition, direct_sum_is_component, mu_additivity_check};
use preproj::components::DEFAULT_SAMPLES;
use preproj::quiver::DynkinType;
use preproj::roots::RootSystem;

fn main() -> preproj::Result<()> {
    let rs = RootSystem::of_type(DynkinType::A(5))?;
    let beta = rs.interval_label(&[(1, 2), (1, 4), (2, 3), (2, 5), (3, 4), (4, 5)])?;
    let cd = canonical_decomposition(&rs, &beta, DEFAULT_SAMPLES, 7)?;
    let parts: Vec<String> = cd.parts.iter().flatten().map(|p| p.describe(&rs)).collect();
    println!("C_beta = closure of {}", parts.join("  (+)  "));

    let alpha = rs.interval_label(&[(1, 2), (2, 4), (3, 3), (4, 5)])?;
    match direct_sum_is_component(&rs, &alpha, &alpha, DEFAULT_SAMPLES, 7)? {
        Some(l) => println!("C_alpha (+) C_alpha is dense in C_{{{}}}", l.describe(&rs)),
        None => println!("C_alpha (+) C_alpha is not a component"),
    }
    let add = mu_additivity_check(&rs, &[alpha.clone(), alpha], DEFAULT_SAMPLES, 7)?;
    println!("mu_g(2 alpha) = {:?}, parts {:?}, additive: {:?}", add.sum_mu, add.part_mu, add.holds);

    let a2 = RootSystem::of_type(DynkinType::A(2))?;
    let s = a2.interval_label(&[(1, 1), (2, 2)])?;
    let cd = canonical_decomposition(&a2, &s, DEFAULT_SAMPLES, 7)?;
    println!("A2: [1,1] + [2,2] decomposes as {:?}", cd.parts);
    Ok(())
}
