//! Ext^1 between generic points of random components, computed from
//! cocycles and from the Hom-form identity.

use preproj::components::sample_component_point;
use preproj::ext::{ext1_dim_cb, ext1_dim_direct};
use preproj::linalg::Field;
use preproj::quiver::DynkinType;
use preproj::roots::{ComponentLabel, RootSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_label<R: Rng>(rs: &RootSystem, rng: &mut R) -> ComponentLabel {
    let picks: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..rs.len())).collect();
    rs.label_of(&picks)
}

fn main() -> preproj::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for ty in [DynkinType::A(3), DynkinType::D(4)] {
        let rs = RootSystem::of_type(ty)?;
        for k in 0..4 {
            let (a, b) = (random_label(&rs, &mut rng), random_label(&rs, &mut rng));
            let x = sample_component_point(&rs, &a, Field::Rationals, 11, 2 * k)?.module;
            let y = sample_component_point(&rs, &b, Field::Rationals, 11, 2 * k + 1)?.module;
            let (d, c) = (ext1_dim_direct(&x, &y)?, ext1_dim_cb(&x, &y)?);
            println!("{ty} {} vs {}: cocycles {d}, Hom form {c}", a.describe(&rs), b.describe(&rs));
            assert_eq!(d, c);
        }
    }
    Ok(())
}
