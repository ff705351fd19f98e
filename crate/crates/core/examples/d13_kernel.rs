//! The kernel of the `(1,3) -> (0,3)` differential and the per-splitting
//! pattern it follows, for a few primitive classes.

use std::time::Instant;
use torelli::lattice::HVector;
use torelli::specseq::{e2_13_kernel, splitting_counts_x, TruncationParams};

fn main() -> torelli::Result<()> {
    let max = std::env::args().nth(1).map(|s| s.parse().expect("splitting cap"));
    let (a, b) = (HVector::a, HVector::b);
    for x in [a(1), a(1) + a(2) + a(3), a(1) + b(2)] {
        let t = Instant::now();
        let p = TruncationParams { x, max_splittings: max, ..Default::default() };
        let [na, nb, nc] = splitting_counts_x(&p)?;
        let k = e2_13_kernel(&p)?;
        println!("x = {x}");
        println!("  splittings by type: a={na} b={nb} c={nc}");
        println!(
            "  basis {} rank {} kernel {} (a + 2b + 2c = {}), pattern {}, {:?}",
            k.basis_size,
            k.rank,
            k.kernel_rank,
            na + 2 * nb + 2 * nc,
            k.matches_pattern,
            t.elapsed()
        );
        if let Some(v) = k.kernel_basis.first() {
            for (l, c) in v {
                println!("    {c:+} {}", l.orbit);
            }
        }
    }
    Ok(())
}
