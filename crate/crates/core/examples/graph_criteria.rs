//! Builds the back-door and front-door graphs and checks both criteria,
//! including a front-door graph that fails because `y` also reaches `x` directly.

use causal_bootstrap::graph::{parse_graph_spec, CausalGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let backdoor = CausalGraph::builder()
        .discrete("u", 2)
        .discrete("y", 2)
        .continuous("x", 2)
        .edge("u", "y")
        .edge("u", "x")
        .edge("y", "x")
        .build()?;
    println!(
        "back-door with {{u}}: {}",
        backdoor.validate_backdoor(&["u"], "y", "x")?.holds()
    );
    println!(
        "back-door with {{}}:  {}",
        backdoor.validate_backdoor(&[], "y", "x")?.holds()
    );
    println!(
        "y ⟂ x | u? {}",
        backdoor.d_separated(&["y"], &["x"], &["u"])?
    );

    for file in ["gauss-frontdoor.graph", "bad-frontdoor.graph"] {
        let path = format!("{}/examples/graphs/{file}", env!("CARGO_MANIFEST_DIR"));
        let spec = parse_graph_spec(&std::fs::read_to_string(&path)?)?;
        let report = spec.graph.validate_frontdoor("z", "y", "x")?;
        println!("{file}: front-door holds = {}", report.holds());
        for v in &report.violations {
            println!("  {v}");
        }
    }
    Ok(())
}
