//! For N + 1 distinct labels over N roots, two different multiplicity
//! vectors with the same total label.

use preproj::calculus::theorem1_witness;
use preproj::roots::ComponentLabel;

fn main() -> preproj::Result<()> {
    let labels: Vec<ComponentLabel> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]]
        .iter()
        .map(|v| ComponentLabel(v.to_vec()))
        .collect();
    let w = theorem1_witness(&labels)?;
    println!("Delta = {:?}", w.delta);
    let show = |v: &[num_bigint::BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    println!("z = ({}), {:?} branch", show(&w.z), w.branch);
    println!("m = ({}), l = ({}), Delta m = Delta l = ({})", show(&w.m), show(&w.l), show(&w.d));
    assert!(w.verify());
    Ok(())
}
