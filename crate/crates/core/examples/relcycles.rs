//! Matching supports of relative cycles and the arc labels attached to
//! splittings.

use torelli::lattice::enumerate_splittings;
use torelli::relcycles::{dim_cd_inequality, enumerate_matching_supports, make_arc_labels};

fn main() -> torelli::Result<()> {
    let supports = enumerate_matching_supports(3)?;
    println!("{} matching supports in genus 3", supports.len());
    for s in supports.iter().take(5) {
        println!("  {:?} boundary ok: {}", s.pairs, s.satisfies_boundary_condition());
    }
    let family = enumerate_splittings(1);
    let labels = make_arc_labels(&family[..4])?;
    for l in labels {
        println!("{:?} -> {:?}", l.key, l.arcs.pairs);
    }
    for (dim, cd) in [(0, 3), (1, 2), (1, 3)] {
        println!("dim {dim} + cd {cd} <= 2g - 3 in genus 3: {}", dim_cd_inequality(dim, cd, 3));
    }
    Ok(())
}
