//! Writes M_2 and a generic point of a component as JSON and reads them
//! back.

use num_rational::BigRational;
use preproj::components::sample_component_point;
use preproj::json::{module_from_json, module_to_json, sample_to_json};
use preproj::leclerc::build_fixture;
use preproj::linalg::Field;

fn main() -> preproj::Result<()> {
    let fx = build_fixture(&BigRational::from_integer(2.into()))?;
    let v = module_to_json(&fx.m_lambda);
    println!("{}", serde_json::to_string(&v)?);
    assert_eq!(module_from_json(&v)?, fx.m_lambda);

    let s = sample_component_point(&fx.roots, &fx.alpha, Field::Rationals, 7, 0)?;
    let v = sample_to_json(&fx.roots, &s);
    println!("sample of C_alpha: dims {}, seed {}, label {}", v["dims"], v["seed"], v["label"]["alpha"]);
    Ok(())
}
