//! Ext-orthogonal families of indecomposable components of small labels
//! over A2, and the count |I| + sum mu_g against the number of roots.

use preproj::calculus::{conjecture7_check, orthogonal_set_search};
use preproj::quiver::DynkinType;
use preproj::roots::RootSystem;

fn main() -> preproj::Result<()> {
    let rs = RootSystem::of_type(DynkinType::A(2))?;
    let report = orthogonal_set_search(&rs, 2, None, 3, 7)?;
    println!("{} labels examined, {} nodes kept", report.examined, report.graph.nodes.len());
    for c in &report.cliques {
        let names: Vec<String> = c.iter().map(|&i| report.graph.nodes[i].describe(&rs)).collect();
        let check = conjecture7_check(&rs, &report.graph, c);
        println!(
            "clique {{{}}}: size {}, mu sum {}, equality with {} roots: {}",
            names.join(", "),
            check.size,
            check.mu_sum,
            check.root_count,
            check.equality
        );
    }
    println!("largest clique {} <= {}: {}", report.max_clique, report.root_count, report.bound_holds);
    Ok(())
}
