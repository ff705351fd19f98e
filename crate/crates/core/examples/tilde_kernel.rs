//! The relative version of the `(1,3)` kernel for the pair `x, y`, and the
//! vanishing of the `(0,4)` term through α-extensions.

use torelli::specseq::{
    build_e1, e2_13_tilde_kernel, splitting_counts_y, tilde_e04_witnesses, Position, TruncationParams,
};

fn main() -> torelli::Result<()> {
    let p = TruncationParams::default();
    let n = splitting_counts_y(&p)?;
    let k = e2_13_tilde_kernel(&p)?;
    println!("x = {}, y = {}", p.x, p.y);
    println!("splittings by type {n:?}, kernel rank {} (sum {})", k.kernel_rank, n.iter().sum::<usize>());
    println!("pattern matches: {}", k.matches_pattern);
    println!("(0,4) term has {} generators", build_e1(Position::tilde(0, 4), &p)?.len());
    for w in tilde_e04_witnesses()? {
        println!("  {:<8} extended by {:?}: cd bound {}", w.type_name, w.extension, w.extended_cd);
    }
    Ok(())
}
