//! Cell dimensions, cohomological dimension bounds of stabilizers and the
//! check that the boundary of the boundary vanishes, over the whole census.

use torelli::cycles::{boundary_faces, boundary_squared, cell_dim, psi_max, CellInstance};
use torelli::surface::classify_types;

fn main() -> torelli::Result<()> {
    for p in 0..=3 {
        for t in classify_types(p) {
            let cell = CellInstance::from_multicurve(&t.witness)?;
            let (faces, dd) = if cell_dim(&cell)? >= 1 {
                (boundary_faces(&cell)?.len(), boundary_squared(&cell)?.len())
            } else {
                (0, 0)
            };
            println!(
                "{:<8} dim={} cd<={} dim+cd={} max psi={} faces={} nonzero terms in dd={}",
                t.name,
                cell_dim(&cell)?,
                t.cd_bound(),
                cell_dim(&cell)? as i64 + t.cd_bound(),
                psi_max(&cell)?,
                faces,
                dd
            );
        }
    }
    Ok(())
}
