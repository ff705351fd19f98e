//! The lantern relation on homology: a fixed suite of configurations, each
//! checked as well as its 84 single-coordinate perturbations.

use torelli::lattice::HVector;
use torelli::sclasses::{default_suite, rearranged_lantern_words, transvection_word, verify_suite};

fn main() -> torelli::Result<()> {
    let suite = default_suite()?;
    for (c, o) in suite.iter().zip(verify_suite(&suite)) {
        println!(
            "{:<26} b = [{}, {}, {}, {}]  holds={} rejected {}/{}",
            c.name, c.b[0], c.b[1], c.b[2], c.b[3], o.holds, o.perturbations_rejected, o.perturbations
        );
    }
    let (lhs, rhs) = rearranged_lantern_words(HVector::a(2));
    println!("rearranged form agrees: {}", transvection_word(&lhs) == transvection_word(&rhs));
    Ok(())
}
