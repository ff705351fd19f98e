//! Symplectic splittings of `Z^6` and their types relative to a class.
//!
//! ```text
//! cargo run --example lattice_splittings -- 1
//! ```

use std::collections::BTreeMap;
use torelli::lattice::{enumerate_splittings, smith_normal_form, splitting_type_wrt_x, HVector, Splitting};

fn main() -> torelli::Result<()> {
    let height: i64 = std::env::args().nth(1).map_or(1, |s| s.parse().expect("height"));
    let s = Splitting::standard();
    println!("standard splitting, stacked basis:\n{:?}", s.stacked_basis().to_rows());
    let snf = smith_normal_form(&s.stacked_basis());
    println!("its Smith form has invariant factors {:?}", snf.factors);

    let family = enumerate_splittings(height);
    println!("{} unordered splittings with coefficients bounded by {height}", family.len());

    for x in [HVector::a(1), HVector::a(1) + HVector::a(2) + HVector::a(3)] {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for s in family.iter() {
            let (t, _) = splitting_type_wrt_x(&x, s)?;
            *counts.entry(format!("{t:?}")).or_default() += 1;
        }
        println!("x = {x}: {counts:?}");
    }
    Ok(())
}
