//! The homomorphisms `ν_{γ,W}` as evaluation tables on symbolic twists, the
//! cup-product pairing they induce, and the presentation of `O_U`.

use crate::error::{Error, Result};
use crate::lattice::{intersection, orthogonal_complement, HVector, SymplecticSubgroup};
use serde::{Deserialize, Serialize};

/// `ν_{γ,W}` for a nonseparating class `γ` and a splitting `W = (W1, W2)`
/// of `H_γ = γ^⊥ / γ`, given by lifts `W1, W2 ⊂ γ^⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuHomomorphism {
    pub gamma: HVector,
    pub w1: SymplecticSubgroup,
    pub w2: SymplecticSubgroup,
}

fn orthogonal_to(u: &SymplecticSubgroup, v: &HVector) -> bool {
    u.basis().iter().all(|b| intersection(b, v) == 0)
}

fn check_part(w: &SymplecticSubgroup) -> Result<()> {
    if w.rank() != 2 {
        return Err(Error::InvalidRank { expected: 2, got: w.rank() });
    }
    if w.gram_matrix().det() != 1 {
        return Err(Error::Precondition(format!("{w:?} is not unimodular")));
    }
    Ok(())
}

fn check_primitive(c: &HVector) -> Result<()> {
    if c.is_zero() {
        return Err(Error::Degenerate("zero curve class".into()));
    }
    if c.content() != 1 {
        return Err(Error::NotPrimitive);
    }
    Ok(())
}

/// Whether `u` and `w` agree in `γ^⊥ / γ`.
fn same_mod(u: &SymplecticSubgroup, w: &SymplecticSubgroup, gamma: &HVector) -> bool {
    let with = |s: &SymplecticSubgroup| {
        let mut g = s.basis().to_vec();
        g.push(*gamma);
        SymplecticSubgroup::saturation(&g)
    };
    with(u) == with(w)
}

impl NuHomomorphism {
    pub fn new(gamma: HVector, w1: SymplecticSubgroup, w2: SymplecticSubgroup) -> Result<Self> {
        check_primitive(&gamma)?;
        check_part(&w1)?;
        check_part(&w2)?;
        if !w1.is_orthogonal_to(&w2) || !orthogonal_to(&w1, &gamma) || !orthogonal_to(&w2, &gamma) {
            return Err(Error::Precondition("W1, W2 and γ must be pairwise orthogonal".into()));
        }
        let mut gens = w1.basis().to_vec();
        gens.extend_from_slice(w2.basis());
        gens.push(gamma);
        let perp = orthogonal_complement(&SymplecticSubgroup::span(&[gamma])?);
        match SymplecticSubgroup::span(&gens) {
            Ok(s) if s == perp => Ok(NuHomomorphism { gamma, w1, w2 }),
            _ => Err(Error::Precondition("W1 ⊕ W2 does not span H_γ".into())),
        }
    }

    /// Whether `{a, b}` is the splitting `W` of `H_γ`.
    fn yields(&self, a: &SymplecticSubgroup, b: &SymplecticSubgroup) -> bool {
        let g = &self.gamma;
        (same_mod(a, &self.w1, g) && same_mod(b, &self.w2, g)) || (same_mod(a, &self.w2, g) && same_mod(b, &self.w1, g))
    }
}

/// Generators of a Torelli stabilizer, described by homology data only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymbolicTwistGenerator {
    /// `T_δ` for a separating curve with `H_δ = u`.
    SeparatingTwist { u: SymplecticSubgroup },
    /// `T_δ T_{δ'}^{-1}` for a bounding pair of class `class`, cutting off
    /// genus-one pieces with homology `sides`.
    BoundingPairTwist { class: HVector, sides: (SymplecticSubgroup, SymplecticSubgroup) },
}

impl SymbolicTwistGenerator {
    pub fn separating(u: SymplecticSubgroup) -> Result<Self> {
        check_part(&u)?;
        Ok(SymbolicTwistGenerator::SeparatingTwist { u })
    }

    pub fn bounding_pair(class: HVector, s1: SymplecticSubgroup, s2: SymplecticSubgroup) -> Result<Self> {
        check_primitive(&class)?;
        check_part(&s1)?;
        check_part(&s2)?;
        if !s1.is_orthogonal_to(&s2) || !orthogonal_to(&s1, &class) || !orthogonal_to(&s2, &class) {
            return Err(Error::Precondition(
                "sides of a bounding pair must be orthogonal to it and to each other".into(),
            ));
        }
        Ok(SymbolicTwistGenerator::BoundingPairTwist { class, sides: (s1, s2) })
    }
}

/// Value of `ν_{γ,W}` on a generator disjoint from `γ`:
///
/// * a separating twist: 1 if it yields `W`, else 0;
/// * the bounding pair through `γ`: -1 if it yields `W`, else 0;
/// * any other bounding pair: 0.
pub fn nu_eval(g: &SymbolicTwistGenerator, nu: &NuHomomorphism) -> Result<i64> {
    let gamma = &nu.gamma;
    match g {
        SymbolicTwistGenerator::SeparatingTwist { u } => {
            if !orthogonal_to(u, gamma) {
                return Err(Error::Precondition(format!("separating curve with H = {u:?} meets γ = {gamma}")));
            }
            // The other part of the induced splitting is the complement of u.
            Ok(i64::from(same_mod(u, &nu.w1, gamma) || same_mod(u, &nu.w2, gamma)))
        }
        SymbolicTwistGenerator::BoundingPairTwist { class, sides } => {
            if intersection(class, gamma) != 0 {
                return Err(Error::Precondition(format!("bounding pair of class {class} meets γ = {gamma}")));
            }
            if class.sign_normalized() != gamma.sign_normalized() {
                return Ok(0);
            }
            Ok(-i64::from(nu.yields(&sides.0, &sides.1)))
        }
    }
}

/// `-det [[a, b], [c, d]]`.
pub fn neg_det(m: [[i64; 2]; 2]) -> i64 {
    -(m[0][0] * m[1][1] - m[0][1] * m[1][0])
}

/// `<[ν1] ⌣ [ν2], A(h1, h2)>` for commuting generators `h1, h2`.
pub fn cup_det_pair(
    nu1: &NuHomomorphism,
    nu2: &NuHomomorphism,
    h1: &SymbolicTwistGenerator,
    h2: &SymbolicTwistGenerator,
) -> Result<i64> {
    Ok(neg_det([[nu_eval(h1, nu1)?, nu_eval(h2, nu1)?], [nu_eval(h1, nu2)?, nu_eval(h2, nu2)?]]))
}

/// `(λ1, λ2, λ3)` modulo the all-ones relation, as `(λ1 - λ3, λ2 - λ3)`.
pub fn o_module_reduce(l: [i64; 3]) -> [i64; 2] {
    [l[0] - l[2], l[1] - l[2]]
}

/// Curves `α1, α2, α3` cutting a four-holed sphere out of the surface
/// together with a separating `θ` with `H_θ = U`, the bounding pairs
/// `{α_j, α'_j}` and the homomorphisms `ν_{α_j, (U, U^⊥)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionConfiguration {
    pub u: SymplecticSubgroup,
    pub alphas: [HVector; 3],
    pub theta: SymbolicTwistGenerator,
    pub bounding_pairs: [SymbolicTwistGenerator; 3],
    pub nus: [NuHomomorphism; 3],
}

/// The configuration with `α = (a1, a2, -a1 - a2)` and `U` the third handle.
pub fn detection_configuration() -> Result<DetectionConfiguration> {
    let (a, b) = (HVector::a, HVector::b);
    let u = SymplecticSubgroup::handle(3);
    let alphas = [a(1), a(2), -a(1) - a(2)];
    let others =
        [SymplecticSubgroup::handle(2), SymplecticSubgroup::handle(1), SymplecticSubgroup::span(&[a(1), b(1) - b(2)])?];
    let mut bps = Vec::new();
    let mut nus = Vec::new();
    for (alpha, w) in alphas.iter().zip(others) {
        bps.push(SymbolicTwistGenerator::bounding_pair(*alpha, u.clone(), w.clone())?);
        nus.push(NuHomomorphism::new(*alpha, u.clone(), w)?);
    }
    Ok(DetectionConfiguration {
        theta: SymbolicTwistGenerator::separating(u.clone())?,
        u,
        alphas,
        bounding_pairs: bps.try_into().expect("three bounding pairs"),
        nus: nus.try_into().expect("three homomorphisms"),
    })
}

/// Pairings of `[ν_i] ⌣ [ν_{i+1}]` (rows, cyclically) with the abelian
/// cycles `A(T_{α_j} T_{α'_j}^{-1}, T_θ)` (columns).
pub fn detection_pairings(c: &DetectionConfiguration) -> Result<[[i64; 3]; 3]> {
    let mut out = [[0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        let (n1, n2) = (&c.nus[i], &c.nus[(i + 1) % 3]);
        for (j, v) in row.iter_mut().enumerate() {
            *v = cup_det_pair(n1, n2, &c.bounding_pairs[j], &c.theta)?;
        }
    }
    Ok(out)
}

/// The three cup-pair functionals evaluated on `Σ λ_j A^j`.
pub fn o_module_detect(c: &DetectionConfiguration, l: [i64; 3]) -> Result<[i64; 3]> {
    let p = detection_pairings(c)?;
    Ok(p.map(|row| (0..3).map(|j| row[j] * l[j]).sum()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_values() {
        assert_eq!(neg_det([[-1, 1], [0, 1]]), 1);
        assert_eq!(neg_det([[0, 1], [0, 1]]), 0);
        let c = detection_configuration().unwrap();
        let p = detection_pairings(&c).unwrap();
        assert_eq!(p[0], [1, -1, 0]);
        assert_eq!(p, [[1, -1, 0], [0, 1, -1], [-1, 0, 1]]);
    }

    #[test]
    fn evaluation_rules() {
        let c = detection_configuration().unwrap();
        let nu = &c.nus[0];
        assert_eq!(nu_eval(&c.theta, nu).unwrap(), 1);
        assert_eq!(nu_eval(&c.bounding_pairs[0], nu).unwrap(), -1);
        assert_eq!(nu_eval(&c.bounding_pairs[1], nu).unwrap(), 0);
        // A separating curve yielding another splitting of H_γ.
        let other = SymplecticSubgroup::span(&[HVector::a(3), HVector::b(3) + HVector::a(2)]).unwrap();
        let t = SymbolicTwistGenerator::separating(other).unwrap();
        assert_eq!(nu_eval(&t, nu).unwrap(), 0);
        // A separating curve meeting γ.
        let t = SymbolicTwistGenerator::separating(SymplecticSubgroup::handle(1)).unwrap();
        assert!(matches!(nu_eval(&t, nu), Err(Error::Precondition(_))));
    }

    #[test]
    fn bad_nu_data() {
        let (a, b) = (HVector::a, HVector::b);
        let h = SymplecticSubgroup::handle;
        assert!(NuHomomorphism::new(2 * a(1), h(2), h(3)).is_err());
        assert!(NuHomomorphism::new(a(1), h(1), h(3)).is_err());
        assert!(NuHomomorphism::new(a(1), h(2), h(2)).is_err());
        let skew = SymplecticSubgroup::span(&[a(2), b(2) + a(1)]).unwrap();
        assert!(NuHomomorphism::new(a(1), skew, h(3)).is_ok());
    }

    #[test]
    fn detection_matches_reduction() {
        let c = detection_configuration().unwrap();
        for l in [[1, 1, 1], [1, 0, 0], [3, -2, 5], [0, 0, 7]] {
            let d = o_module_detect(&c, l).unwrap();
            assert_eq!(d, [l[0] - l[1], l[1] - l[2], l[2] - l[0]]);
            let [r1, r2] = o_module_reduce(l);
            assert_eq!(d, [r1 - r2, r2, -r1]);
        }
        assert_eq!(o_module_reduce([1, 1, 1]), [0, 0]);
        assert_eq!(o_module_reduce([1, 0, 0]), [1, 0]);
    }
}
