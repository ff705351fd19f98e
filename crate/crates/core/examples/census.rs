//! Lists the combinatorial types of multicurves whose cells have a given
//! dimension, with a witness labelling for each.

use torelli::surface::classify_types;

fn main() {
    for p in 0..=4 {
        let types = classify_types(p);
        println!("dimension {p}: {} types", types.len());
        for t in &types {
            let w = &t.witness;
            println!(
                "  {:<8} curves={} P={} BP={} classes={:?}",
                t.name,
                w.curve_count(),
                t.p_count(),
                t.bp(),
                w.classes.iter().map(|c| c.to_string()).collect::<Vec<_>>()
            );
        }
    }
}
