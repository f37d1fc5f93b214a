//! Every example runs to completion.

use std::process::Command;

const EXAMPLES: &[&str] = &[
    "roots_and_labels",
    "hom_and_decompose",
    "ext_cross_check",
    "generic_components",
    "canonical_decomposition",
    "theorem1_witness",
    "orthogonal_search",
    "self_extension_census",
    "json_io",
    "verify_leclerc",
];

#[test]
fn examples_run() {
    let listed: Vec<String> = std::fs::read_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/examples"))
        .unwrap()
        .map(|e| e.unwrap().path().file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    for name in &listed {
        assert!(EXAMPLES.contains(&name.as_str()), "example {name} is not exercised");
    }
    for name in EXAMPLES {
        let out = Command::new(env!("CARGO"))
            .args(["run", "-q", "--example", name])
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{name} failed:\n{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}
