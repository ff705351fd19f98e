//! The `(2,2) -> (1,2)` differential over the ladder, checked block by block.

use torelli::cycles::build_ladder;
use torelli::specseq::{build_e1, check_injective, d22_apply, Position, TruncationParams};

fn main() -> torelli::Result<()> {
    for mn in [(1, 1), (1, 2), (2, 3)] {
        for k in 1..=4 {
            let p = TruncationParams { k, mn, ..Default::default() };
            let src = build_e1(Position::new(2, 2), &p)?;
            let tgt = build_e1(Position::new(1, 2), &p)?;
            let lad = build_ladder(mn.0, mn.1, k)?;
            let m = d22_apply(&src, &tgt, &lad)?;
            let blocks = m.blocks();
            println!(
                "(m,n)={mn:?} K={k}: {}x{} with {} blocks, injective {}",
                tgt.len(),
                src.len(),
                blocks.len(),
                check_injective(&m)
            );
        }
    }
    Ok(())
}
