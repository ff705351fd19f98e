//! The module of s-classes: normal forms, the per-splitting quotient and
//! the action of handle permutations.

use torelli::lattice::Splitting;
use torelli::sclasses::{normal_form, per_splitting_rank, quotient_image, s3_equivariance_check, SClassElement, PERMS};

fn main() -> torelli::Result<()> {
    let r = per_splitting_rank();
    println!(
        "per splitting: {} generators, relations of rank {}, free rank {}, torsion {:?}",
        r.generators, r.relation_rank, r.free_rank, r.torsion
    );

    let s = Splitting::standard().canonical();
    for p in PERMS {
        let e = SClassElement::generator(s.permuted(p));
        let nf = normal_form(&e);
        let terms: Vec<String> = nf.terms().iter().map(|(t, c)| format!("{c:+}·{:?}", t.part_keys()[0])).collect();
        println!("s{p:?} = {}  -> {:?}", terms.join(" "), quotient_image(&e).values().collect::<Vec<_>>());
    }

    let mixed = 2 * SClassElement::generator(s.permuted([2, 0, 1])) - SClassElement::generator(s.permuted([0, 2, 1]));
    println!("normal form of a combination: {}", serde_json::to_string(&normal_form(&mixed)).expect("json"));

    let eq = s3_equivariance_check()?;
    println!("{eq:?}");
    Ok(())
}
