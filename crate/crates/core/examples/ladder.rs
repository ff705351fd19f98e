//! Builds the ladder of cells for `x = m·α + n·y` and prints its shape.
//!
//! ```text
//! cargo run --example ladder -- 2 3 6
//! ```

use torelli::cycles::{build_ladder, LadderCellTag, LadderEdgeTag};

fn main() -> torelli::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse().expect("integer")).collect();
    let (m, n, k) = match args[..] {
        [m, n, k] => (m, n, k),
        [m, n] => (m, n, 4),
        _ => (1, 1, 4),
    };
    let lad = build_ladder(m, n, k)?;
    println!("x = {}, l = {}", lad.x(), lad.l);
    println!("{} vertices, {} edges, {} cells", lad.vertices.len(), lad.edges.len(), lad.cells.len());
    println!("edge census {:?}", lad.edge_census());
    lad.check_invariants()?;
    for j in lad.interior_indices() {
        if let Some(e) = lad.edge_index(LadderEdgeTag::D(j)) {
            println!("edge D({j}) lies on {} cells", lad.cells_on_edge(e).len());
        }
    }
    for tag in [LadderCellTag::Rect(0), LadderCellTag::Rect(-1), LadderCellTag::NeighbourTriangle { k: 0, plus: true }]
    {
        if let Some(c) = lad.cell_index(tag) {
            println!("psi({tag:?}) = {}", lad.psi(c)?);
        }
    }
    Ok(())
}
