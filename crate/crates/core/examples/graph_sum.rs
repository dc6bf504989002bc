//! Bipartite multigraphs with degrees at most two and the weighted sum for N^I.

use transvect::diagram::{components, enumerate, graph_term, n1_via_graphs, weight};
use transvect::scalar::fmt_short;

fn main() -> transvect::Result<()> {
    println!("graphs for e=2, p=1:");
    for g in enumerate(2, 1)? {
        let report = components(&g);
        println!(
            "  {:?}  weight={}  cycles={}  mixed={}  term={}",
            g.rows(),
            weight(&g),
            report.cycles(),
            report.has_mixed_chain(),
            fmt_short(&graph_term(&g)),
        );
    }
    for e in 1..=5 {
        let row: Vec<String> = (0..=e).map(|p| fmt_short(&n1_via_graphs(e, p).unwrap())).collect();
        println!("N^I(e={e}, p) = {}", row.join(", "));
    }
    Ok(())
}
