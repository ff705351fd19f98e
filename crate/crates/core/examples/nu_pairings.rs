//! Evaluations of ν-homomorphisms on twist generators and the pairing table
//! used to detect s-classes.

use torelli::lattice::{HVector, SymplecticSubgroup};
use torelli::sclasses::{
    detection_configuration, detection_pairings, nu_eval, o_module_detect, o_module_reduce, NuHomomorphism,
    SymbolicTwistGenerator,
};

fn main() -> torelli::Result<()> {
    let (a, b) = (HVector::a, HVector::b);
    let nu = NuHomomorphism::new(a(1), SymplecticSubgroup::handle(2), SymplecticSubgroup::handle(3))?;
    let sep = SymbolicTwistGenerator::separating(SymplecticSubgroup::handle(2))?;
    let other = SymbolicTwistGenerator::separating(SymplecticSubgroup::span(&[a(2), b(2) + a(1)])?)?;
    println!("nu(separating twist on handle 2) = {}", nu_eval(&sep, &nu)?);
    println!("nu(separating twist on a sheared handle) = {}", nu_eval(&other, &nu)?);

    let c = detection_configuration()?;
    let table = detection_pairings(&c)?;
    println!("pairings of the three ν's with the three s-classes:");
    for row in table {
        println!("  {row:?}");
    }
    for l in [[1, 1, 1], [1, 0, 0], [2, -1, 3]] {
        println!("l = {l:?}: reduced {:?}, detected {:?}", o_module_reduce(l), o_module_detect(&c, l)?);
    }
    Ok(())
}
