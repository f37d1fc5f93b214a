//! Fibers over M_alpha, generic points of C_alpha, dimensions and the
//! generic number of parameters.

use preproj::components::{component_dim, component_is_indecomposable, fiber_basis, mu_g, DEFAULT_SAMPLES};
use preproj::linalg::Field;
use preproj::quiver::DynkinType;
use preproj::rep::dim_hom;
use preproj::roots::RootSystem;

fn main() -> preproj::Result<()> {
    let rs = RootSystem::of_type(DynkinType::A(5))?;
    let q = Field::Rationals;
    let labels = [
        ("alpha", rs.interval_label(&[(1, 2), (2, 4), (3, 3), (4, 5)])?),
        ("beta1", rs.interval_label(&[(1, 2), (2, 3), (3, 4), (4, 5)])?),
        ("beta2", rs.interval_label(&[(1, 4), (2, 5)])?),
    ];
    for (name, alpha) in &labels {
        let mf = rs.build_m_alpha(alpha, q)?;
        let d = mf.dims().clone();
        let fiber = fiber_basis(&mf, rs.preprojective_algebra())?;
        let end = dim_hom(&mf, &mf)? as i64;
        let euler = rs.quiver().euler_form(&d, &d)?;
        println!(
            "{name} = {}: dims {d}, fiber dim {} (End {end} - euler {euler}), component dim {}, mu_g {}, indecomposable {}",
            alpha.describe(&rs),
            fiber.dim(),
            component_dim(&rs, alpha),
            mu_g(&rs, alpha, q, DEFAULT_SAMPLES, 7)?,
            component_is_indecomposable(&rs, alpha, DEFAULT_SAMPLES, 7)?,
        );
    }
    Ok(())
}
