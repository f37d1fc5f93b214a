//! Positive roots of a few Dynkin types, the indecomposable module of each
//! root, and the label recovered from a direct sum of root modules.

use preproj::components::rng_stream;
use preproj::linalg::Field;
use preproj::quiver::DynkinType;
use preproj::rep::is_indecomposable;
use preproj::roots::RootSystem;

fn main() -> preproj::Result<()> {
    for ty in [DynkinType::A(5), DynkinType::D(4), DynkinType::E(6)] {
        let rs = RootSystem::of_type(ty)?;
        println!("{ty}: {} positive roots", rs.len());
    }

    let rs = RootSystem::of_type(DynkinType::A(5))?;
    let names: Vec<String> = (0..rs.len()).map(|i| rs.root_name(i)).collect();
    println!("A5 order: {}", names.join(" < "));

    let d4 = RootSystem::of_type(DynkinType::D(4))?;
    let top = d4.len() - 1;
    let m = d4.root_module(top, Field::Rationals)?;
    println!(
        "D4 highest root {} -> module indecomposable: {}",
        d4.root(top),
        is_indecomposable(&m)?
    );

    let alpha = rs.interval_label(&[(1, 2), (2, 4), (3, 3), (4, 5)])?;
    let m_alpha = rs.build_m_alpha(&alpha, Field::Rationals)?;
    let mut rng = rng_stream(1, 0);
    let back = rs.gabriel_label(&m_alpha, &mut rng)?;
    println!("M_alpha has dims {}, label {} = {}", m_alpha.dims(), back, back.describe(&rs));
    Ok(())
}
