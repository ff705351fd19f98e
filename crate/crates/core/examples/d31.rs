//! Injectivity of the `(3,1) -> (2,1)` differential for growing truncations.

use std::time::Instant;
use torelli::specseq::{build_e1, check_injective, d31_apply, Position, TruncationParams};

fn main() -> torelli::Result<()> {
    for k in 1..=8 {
        let t = Instant::now();
        let p = TruncationParams { k, ..Default::default() };
        let src = build_e1(Position::new(3, 1), &p)?;
        let tgt = build_e1(Position::new(2, 1), &p)?;
        let m = d31_apply(&src, &tgt)?;
        println!(
            "K={k}: {} columns, {} rows, rank {}, injective {} ({:?})",
            src.len(),
            tgt.len(),
            m.rank(),
            check_injective(&m),
            t.elapsed()
        );
    }
    Ok(())
}
