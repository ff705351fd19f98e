//! The lantern relation seen on `H`: each twist acts as the transvection
//! `v ↦ v + <v, c> c` and both sides are compared as 6x6 matrices.
//!
//! Equality of these matrices is necessary for the relation and far from
//! sufficient; it is the only part that can be checked on homology.

use crate::error::{Error, Result};
use crate::lattice::{intersection, HVector, IntMatrix, DIM};
use serde::{Deserialize, Serialize};

/// `T_c^k` on `H`. Since `<c, c> = 0` this is `v ↦ v + k <v, c> c`.
fn transvection_power(c: &HVector, k: i64) -> IntMatrix {
    let mut m = IntMatrix::identity(DIM);
    for i in 0..DIM {
        let mut e = [0; DIM];
        e[i] = 1;
        let t = k * intersection(&HVector(e), c);
        for r in 0..DIM {
            m[(r, i)] += t * c.0[r];
        }
    }
    m
}

pub fn transvection(c: &HVector) -> IntMatrix {
    transvection_power(c, 1)
}

/// `T_{c1}^{k1} T_{c2}^{k2} ...` as a matrix (rightmost factor acts first).
pub fn transvection_word(word: &[(HVector, i64)]) -> IntMatrix {
    word.iter().fold(IntMatrix::identity(DIM), |acc, (c, k)| acc.mul(&transvection_power(c, *k)))
}

/// Boundary classes `b1..b4` of a four-holed sphere and the interior curves
/// `x, y, z` of the relation `T_x T_y T_z = T_{b1} T_{b2} T_{b3} T_{b4}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanternConfig {
    pub name: String,
    pub b: [HVector; 4],
    pub x: HVector,
    pub y: HVector,
    pub z: HVector,
}

impl LanternConfig {
    /// The seven classes in the order `b1, b2, b3, b4, x, y, z`.
    pub fn classes(&self) -> [HVector; 7] {
        [self.b[0], self.b[1], self.b[2], self.b[3], self.x, self.y, self.z]
    }

    pub fn with_classes(&self, c: [HVector; 7]) -> LanternConfig {
        LanternConfig { name: self.name.clone(), b: [c[0], c[1], c[2], c[3]], x: c[4], y: c[5], z: c[6] }
    }
}

/// Compares both sides of the relation on homology. The boundary classes
/// must satisfy `b1 + b2 + b3 = ±b4`.
pub fn lantern_check(c: &LanternConfig) -> Result<bool> {
    let [b1, b2, b3, b4] = c.b;
    let s = b1 + b2 + b3;
    if s != b4 && s != -b4 {
        return Err(Error::Precondition(format!("{}: b1 + b2 + b3 = {s} but b4 = {b4}", c.name)));
    }
    let lhs = transvection_word(&[(c.x, 1), (c.y, 1), (c.z, 1)]);
    let rhs = transvection_word(&[(b1, 1), (b2, 1), (b3, 1), (b4, 1)]);
    Ok(lhs == rhs)
}

/// The configuration with boundary curves of classes `b1, b2, b3`: then
/// `b4 = b1 + b2 + b3` and `x, y, z` surround consecutive pairs.
pub fn lantern_from_boundary(name: &str, b1: HVector, b2: HVector, b3: HVector) -> Result<LanternConfig> {
    for (u, v) in [(b1, b2), (b2, b3), (b1, b3)] {
        if intersection(&u, &v) != 0 {
            return Err(Error::Precondition(format!("{name}: boundary classes {u} and {v} intersect")));
        }
    }
    Ok(LanternConfig { name: name.into(), b: [b1, b2, b3, b1 + b2 + b3], x: b1 + b2, y: b2 + b3, z: b1 + b3 })
}

/// Both sides of `T_{θ1}^{-1} T_{θ2} T_{θ3}^{-1} = T_{α'2}^{-1} T_{α2}^2 T_β^{-1}`
/// with separating `θ`'s and `α'2, α2, β` all of class `c`.
pub fn rearranged_lantern_words(c: HVector) -> (Vec<(HVector, i64)>, Vec<(HVector, i64)>) {
    let z = HVector::ZERO;
    (vec![(z, -1), (z, 1), (z, -1)], vec![(c, -1), (c, 2), (c, -1)])
}

/// The fixed suite: a separating lantern, the bounding-pair lantern in its
/// original form, and four nonseparating configurations.
pub fn default_suite() -> Result<Vec<LanternConfig>> {
    let (a, b) = (HVector::a, HVector::b);
    let z = HVector::ZERO;
    Ok(vec![
        LanternConfig { name: "separating".into(), b: [z; 4], x: z, y: z, z },
        // T_{θ2} T_{α'2} T_β = T_{θ1} T_{α2}^2 T_{θ3}.
        LanternConfig { name: "bounding pair".into(), b: [z, a(2), z, a(2)], x: z, y: a(2), z: a(2) },
        lantern_from_boundary("three handles", a(1), a(2), a(3))?,
        lantern_from_boundary("separating outer boundary", a(1), a(2), -a(1) - a(2))?,
        lantern_from_boundary("mixed", a(1), b(2), a(3))?,
        lantern_from_boundary("sheared", a(1) + a(2), a(3), -a(2))?,
    ])
}

/// Result for one configuration of a suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanternOutcome {
    pub name: String,
    pub holds: bool,
    pub perturbations: usize,
    /// Perturbations (one class moved by `±e_i`) for which the check fails.
    pub perturbations_rejected: usize,
}

impl LanternOutcome {
    pub fn passed(&self) -> bool {
        self.holds && self.perturbations_rejected == self.perturbations
    }
}

pub fn verify_suite(suite: &[LanternConfig]) -> Vec<LanternOutcome> {
    suite
        .iter()
        .map(|c| {
            let holds = matches!(lantern_check(c), Ok(true));
            let mut perturbations = 0;
            let mut rejected = 0;
            for slot in 0..7 {
                for i in 0..DIM {
                    for s in [1, -1] {
                        let mut e = [0; DIM];
                        e[i] = s;
                        let mut cl = c.classes();
                        cl[slot] = cl[slot] + HVector(e);
                        perturbations += 1;
                        if !matches!(lantern_check(&c.with_classes(cl)), Ok(true)) {
                            rejected += 1;
                        }
                    }
                }
            }
            LanternOutcome { name: c.name.clone(), holds, perturbations, perturbations_rejected: rejected }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Products of transvections about pairwise disjoint classes, written
    /// out as `I + Σ k_c c <., c>`.
    fn isotropic_product(word: &[(HVector, i64)]) -> IntMatrix {
        let mut m = IntMatrix::identity(DIM);
        for (c, k) in word {
            for col in 0..DIM {
                let mut e = [0; DIM];
                e[col] = 1;
                let p = intersection(&HVector(e), c);
                for row in 0..DIM {
                    m[(row, col)] += k * p * c.0[row];
                }
            }
        }
        m
    }

    #[test]
    fn transvection_matches_oracle() {
        let c = HVector::a(1) - HVector::b(2) + HVector::a(3);
        assert_eq!(transvection(&c), isotropic_product(&[(c, 1)]));
        let inv = transvection_word(&[(c, 1), (c, -1)]);
        assert_eq!(inv, IntMatrix::identity(DIM));
        // Transvections preserve the form.
        let t = transvection(&c);
        let j = crate::lattice::gram();
        assert_eq!(t.transpose().mul(&j).mul(&t), j);
    }

    #[test]
    fn suite_holds_with_oracle() {
        for c in default_suite().unwrap() {
            assert!(lantern_check(&c).unwrap(), "{}", c.name);
            let rhs: Vec<(HVector, i64)> = c.b.iter().map(|b| (*b, 1)).collect();
            assert_eq!(transvection_word(&rhs), isotropic_product(&rhs));
        }
    }

    #[test]
    fn rearranged_form() {
        let (l, r) = rearranged_lantern_words(HVector::a(2));
        assert_eq!(transvection_word(&l), IntMatrix::identity(DIM));
        assert_eq!(transvection_word(&r), IntMatrix::identity(DIM));
        assert_eq!(r.iter().map(|w| w.1).sum::<i64>(), 0);
    }

    #[test]
    fn perturbations_fail() {
        for o in verify_suite(&default_suite().unwrap()) {
            assert!(o.passed(), "{o:?}");
            assert_eq!(o.perturbations, 84);
        }
    }

    #[test]
    fn inconsistent_boundary_is_rejected() {
        let mut c = lantern_from_boundary("t", HVector::a(1), HVector::a(2), HVector::a(3)).unwrap();
        c.b[3] = HVector::a(1);
        assert!(matches!(lantern_check(&c), Err(Error::Precondition(_))));
        assert!(lantern_from_boundary("t", HVector::a(1), HVector::b(1), HVector::a(3)).is_err());
    }
}
