//! s-classes `s(V1, V2, V3)` indexed by ordered splittings, their relations
//! and the homomorphisms used to detect them.
//!
//! Two relations hold among the generators of one unordered splitting:
//!
//! * swap: `s(V1, V2, V3) = s(V1, V3, V2)`;
//! * cyclic: `s(V1, V2, V3) + s(V2, V3, V1) + s(V3, V1, V2) = 0`.
//!
//! The quotient of the six ordered generators is `Z^3 / Δ ≅ Z^2`, with
//! `s(V_σ(1), V_σ(2), V_σ(3))` going to the class of `e_σ(1)`.

mod image;
mod lantern;
mod nu;

pub use image::{cyclic_relation_check, sclass_image_in_e2, sclass_image_of, CyclicRelationReport, SIGN_CONVENTION};
pub use lantern::{
    default_suite, lantern_check, lantern_from_boundary, rearranged_lantern_words, transvection, transvection_word,
    verify_suite, LanternConfig, LanternOutcome,
};
pub use nu::{
    cup_det_pair, detection_configuration, detection_pairings, neg_det, nu_eval, o_module_detect, o_module_reduce,
    DetectionConfiguration, NuHomomorphism, SymbolicTwistGenerator,
};

use crate::error::{Error, Result};
use crate::lattice::{
    hermite_rows, kernel_basis, smith_normal_form, HVector, IntMatrix, Splitting, SplittingKey, SymplecticSubgroup,
};
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// The six orderings of three parts. Generator `j` of a splitting puts
/// canonical part `PERMS[j][i]` in slot `i`.
pub const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// A finite integer combination of generators `s(V1, V2, V3)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<SClassTerm>", try_from = "Vec<SClassTerm>")]
pub struct SClassElement {
    terms: BTreeMap<Splitting, i64>,
}

/// JSON form of one term: the ordered part keys and the coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SClassTerm {
    pub splitting: [Vec<i64>; 3],
    pub coefficient: i64,
}

impl From<SClassElement> for Vec<SClassTerm> {
    fn from(e: SClassElement) -> Self {
        e.terms.into_iter().map(|(s, coefficient)| SClassTerm { splitting: s.part_keys(), coefficient }).collect()
    }
}

fn part_from_key(key: &[i64]) -> Result<SymplecticSubgroup> {
    if key.len() != 12 {
        return Err(Error::InvalidSplitting(format!("part key of length {}", key.len())));
    }
    let v = |i: usize| HVector(key[6 * i..6 * i + 6].try_into().expect("six coordinates"));
    SymplecticSubgroup::span(&[v(0), v(1)])
}

impl TryFrom<Vec<SClassTerm>> for SClassElement {
    type Error = Error;

    fn try_from(terms: Vec<SClassTerm>) -> Result<Self> {
        let mut e = SClassElement::zero();
        for t in terms {
            let [p, q, r] = &t.splitting;
            let s = Splitting::new(part_from_key(p)?, part_from_key(q)?, part_from_key(r)?)?;
            e.add_term(s, t.coefficient);
        }
        Ok(e)
    }
}

impl SClassElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single generator `s(V1, V2, V3)`.
    pub fn generator(s: Splitting) -> Self {
        let mut e = Self::zero();
        e.add_term(s, 1);
        e
    }

    pub fn add_term(&mut self, s: Splitting, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(s) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Splitting, i64> {
        &self.terms
    }

    pub fn coefficient(&self, s: &Splitting) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Unordered splittings carrying a term.
    pub fn support(&self) -> Vec<SplittingKey> {
        let mut keys: Vec<SplittingKey> = self.terms.keys().map(|s| s.key()).collect();
        keys.sort();
        keys.dedup();
        keys
    }
}

impl Add for SClassElement {
    type Output = SClassElement;

    fn add(mut self, rhs: SClassElement) -> SClassElement {
        for (s, c) in rhs.terms {
            self.add_term(s, c);
        }
        self
    }
}

impl Neg for SClassElement {
    type Output = SClassElement;

    fn neg(self) -> SClassElement {
        -1 * self
    }
}

impl Sub for SClassElement {
    type Output = SClassElement;

    fn sub(self, rhs: SClassElement) -> SClassElement {
        self + -rhs
    }
}

impl Mul<SClassElement> for i64 {
    type Output = SClassElement;

    fn mul(self, e: SClassElement) -> SClassElement {
        let mut out = SClassElement::zero();
        for (s, c) in e.terms {
            out.add_term(s, self * c);
        }
        out
    }
}

/// Index of the first part of `s` among the parts of `s.canonical()`.
pub fn leading_index(s: &Splitting) -> usize {
    let canon = s.canonical();
    canon.parts().iter().position(|p| p == s.part(0)).expect("same parts")
}

/// The `j`-th ordered generator of a canonical splitting.
pub fn ordered_generator(canon: &Splitting, j: usize) -> Splitting {
    canon.permuted(PERMS[j])
}

/// Generator of the normal form led by canonical part `i` (0 or 1): the
/// remaining parts follow in ascending order.
pub fn nf_generator(s: &Splitting, i: usize) -> Splitting {
    assert!(i < 2, "normal forms use the two smallest parts");
    let canon = s.canonical();
    ordered_generator(&canon, if i == 0 { 0 } else { 2 })
}

/// Rewrites `s` in the two normal-form generators of its splitting.
fn rewrite(s: &Splitting) -> Vec<(Splitting, i64)> {
    match leading_index(s) {
        i @ (0 | 1) => vec![(nf_generator(s, i), 1)],
        _ => vec![(nf_generator(s, 0), -1), (nf_generator(s, 1), -1)],
    }
}

/// Applies the swap relation to order the trailing parts and the cyclic relation to eliminate the
/// generator led by the part with the largest key.
pub fn normal_form(e: &SClassElement) -> SClassElement {
    let mut out = SClassElement::zero();
    for (s, &c) in &e.terms {
        for (g, k) in rewrite(s) {
            out.add_term(g, c * k);
        }
    }
    out
}

/// Rows of the relations among the six ordered generators of one
/// splitting: three swaps and the two cyclic sums.
pub fn relation_matrix() -> IntMatrix {
    let idx = |p: [usize; 3]| PERMS.iter().position(|&q| q == p).expect("a permutation");
    let mut rows = Vec::new();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let mut r = vec![0; 6];
        r[idx([i, j, k])] += 1;
        r[idx([i, k, j])] -= 1;
        rows.push(r);
    }
    for p in [[0, 1, 2], [0, 2, 1]] {
        let mut r = vec![0; 6];
        for shift in 0..3 {
            r[idx([p[shift], p[(shift + 1) % 3], p[(shift + 2) % 3]])] += 1;
        }
        rows.push(r);
    }
    IntMatrix::from_rows(&rows, 6)
}

/// Smith normal form data of the quotient of the six ordered generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingRank {
    pub generators: usize,
    pub relation_rank: usize,
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<i64>,
}

pub fn per_splitting_rank() -> SplittingRank {
    let snf = smith_normal_form(&relation_matrix());
    SplittingRank { generators: 6, relation_rank: snf.rank(), free_rank: 6 - snf.rank(), torsion: snf.torsion() }
}

/// Matrix of `normal_form` on the six ordered generators of `s`: column `j`
/// holds the coordinates of the normal form of generator `j`.
pub fn normal_form_matrix(s: &Splitting) -> IntMatrix {
    let canon = s.canonical();
    let gens: Vec<Splitting> = (0..6).map(|j| ordered_generator(&canon, j)).collect();
    let mut m = IntMatrix::zeros(6, 6);
    for (j, g) in gens.iter().enumerate() {
        let nf = normal_form(&SClassElement::generator(g.clone()));
        for (t, c) in nf.terms() {
            let i = gens.iter().position(|h| h == t).expect("normal form stays in the splitting");
            m[(i, j)] = *c;
        }
    }
    m
}

/// Whether the kernel of `normal_form` on one splitting is exactly the
/// lattice spanned by the relations.
pub fn normal_form_kernel_is_relation_span(s: &Splitting) -> bool {
    let ker = kernel_basis(&normal_form_matrix(s));
    hermite_rows(&ker, 6) == hermite_rows(&relation_matrix().to_rows(), 6)
}

/// `e_i` in `Z^3 / Δ`, written as `(a - c, b - c)`.
pub fn quotient_class(i: usize) -> [i64; 2] {
    let mut e = [0i64; 3];
    e[i] = 1;
    [e[0] - e[2], e[1] - e[2]]
}

/// The map to `Z^3 / Δ` on each unordered splitting of the support.
pub fn quotient_image(e: &SClassElement) -> BTreeMap<SplittingKey, [i64; 2]> {
    let mut out: BTreeMap<SplittingKey, [i64; 2]> = BTreeMap::new();
    for (s, &c) in e.terms() {
        let q = quotient_class(leading_index(s));
        let slot = out.entry(s.key()).or_default();
        slot[0] += c * q[0];
        slot[1] += c * q[1];
    }
    out.retain(|_, v| *v != [0, 0]);
    out
}

/// Outcome of the exhaustive `S_3` check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceReport {
    /// Pairs (generator ordering, symmetry) examined.
    pub checked: usize,
    pub respects_relations: bool,
    pub preserved_by_normal_form: bool,
    pub equivariant: bool,
    /// Determinant of the induced map from the normal-form basis to `Z^2`.
    pub induced_det: i64,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.respects_relations && self.preserved_by_normal_form && self.equivariant && self.induced_det.abs() == 1
    }
}

/// The symplectic automorphism of `H` permuting the standard handles.
pub fn handle_permutation(sigma: [usize; 3]) -> IntMatrix {
    let mut m = IntMatrix::zeros(6, 6);
    for j in 0..3 {
        m[(2 * sigma[j], 2 * j)] = 1;
        m[(2 * sigma[j] + 1, 2 * j + 1)] = 1;
    }
    m
}

fn act(h: &IntMatrix, u: &SymplecticSubgroup) -> Result<SymplecticSubgroup> {
    let imgs: Vec<HVector> =
        u.basis().iter().map(|v| HVector(h.mul_vec(&v.0).try_into().expect("six coordinates"))).collect();
    SymplecticSubgroup::span(&imgs)
}

/// Checks that `s(V_σ(1), V_σ(2), V_σ(3)) ↦ [e_σ(1)]` respects the
/// relations and commutes with the handle permutations acting on the
/// standard splitting, for all six `σ` and all six symmetries.
pub fn s3_equivariance_check() -> Result<EquivarianceReport> {
    let canon = Splitting::standard().canonical();
    let phi = |s: &Splitting| quotient_class(leading_index(s));
    let rel = relation_matrix();
    let respects_relations = (0..rel.rows()).all(|r| {
        let mut acc = [0, 0];
        for (j, &c) in rel.row(r).iter().enumerate() {
            let q = phi(&ordered_generator(&canon, j));
            acc[0] += c * q[0];
            acc[1] += c * q[1];
        }
        acc == [0, 0]
    });
    let mut checked = 0;
    let mut equivariant = true;
    let mut preserved = true;
    for j in 0..6 {
        let g = SClassElement::generator(ordered_generator(&canon, j));
        preserved &= quotient_image(&normal_form(&g)) == quotient_image(&g);
    }
    for sigma in PERMS {
        let h = handle_permutation(sigma);
        // Induced permutation of the canonical parts.
        let mut tau = [0usize; 3];
        for (i, p) in canon.parts().iter().enumerate() {
            let hp = act(&h, p)?;
            tau[i] = canon
                .parts()
                .iter()
                .position(|q| *q == hp)
                .ok_or_else(|| Error::Inconsistent("handle permutation moved a part off the splitting".into()))?;
        }
        for j in 0..6 {
            let s = ordered_generator(&canon, j);
            let moved = Splitting::new(act(&h, s.part(0))?, act(&h, s.part(1))?, act(&h, s.part(2))?)?;
            // h acts on Z^3 by permuting coordinates through tau.
            let expected = quotient_class(tau[leading_index(&s)]);
            equivariant &= phi(&moved) == expected;
            checked += 1;
        }
    }
    let a = quotient_class(leading_index(&nf_generator(&canon, 0)));
    let b = quotient_class(leading_index(&nf_generator(&canon, 1)));
    Ok(EquivarianceReport {
        checked,
        respects_relations,
        preserved_by_normal_form: preserved,
        equivariant,
        induced_det: a[0] * b[1] - a[1] * b[0],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specseq::splitting_family;

    fn std_gen(p: [usize; 3]) -> SClassElement {
        SClassElement::generator(Splitting::standard().canonical().permuted(p))
    }

    #[test]
    fn cyclic_sum_and_transposition_vanish() {
        let cyc = std_gen([0, 1, 2]) + std_gen([1, 2, 0]) + std_gen([2, 0, 1]);
        assert!(normal_form(&cyc).is_zero());
        let swap = std_gen([0, 1, 2]) - std_gen([0, 2, 1]);
        assert!(normal_form(&swap).is_zero());
        let g = std_gen([0, 1, 2]);
        assert_eq!(normal_form(&g), g);
        assert!(!normal_form(&std_gen([1, 0, 2])).is_zero());
    }

    #[test]
    fn rank_two_without_torsion() {
        let r = per_splitting_rank();
        assert_eq!((r.relation_rank, r.free_rank), (4, 2));
        assert!(r.torsion.is_empty());
    }

    #[test]
    fn normal_form_kernel_on_family() {
        for s in splitting_family(1).iter().step_by(997) {
            assert!(normal_form_kernel_is_relation_span(s));
            let m = normal_form_matrix(s);
            assert_eq!(m.mul(&m), m);
        }
    }

    #[test]
    fn equivariance() {
        let r = s3_equivariance_check().unwrap();
        assert_eq!(r.checked, 36);
        assert!(r.passed(), "{r:?}");
        assert_eq!(quotient_class(0), [1, 0]);
        assert_eq!(quotient_class(2), [-1, -1]);
    }

    #[test]
    fn json_round_trip() {
        let fam = splitting_family(1);
        let e = 3 * SClassElement::generator(fam[5].clone()) - SClassElement::generator(fam[9].permuted([2, 0, 1]));
        let js = serde_json::to_string(&e).unwrap();
        assert!(js.contains("coefficient"));
        let back: SClassElement = serde_json::from_str(&js).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn cancelling_terms_leave_no_zero_entries() {
        let g = std_gen([1, 2, 0]);
        let e = g.clone() - g;
        assert!(e.is_zero());
        assert!(e.support().is_empty());
    }
}
