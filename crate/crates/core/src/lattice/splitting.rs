//! Orthogonal splittings `H = V1 ⊕ V2 ⊕ V3` into rank-2 unimodular parts.

use super::{intersection, HVector, IntMatrix, SymplecticSubgroup, DIM};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use std::fmt;

/// Key of an unordered splitting: the three part keys in ascending order.
pub type SplittingKey = [Vec<i64>; 3];

/// An ordered splitting `(V1, V2, V3)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Splitting {
    parts: [SymplecticSubgroup; 3],
}

impl fmt::Debug for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?})", self.parts[0], self.parts[1], self.parts[2])
    }
}

impl Splitting {
    /// Validates the three parts: rank 2, unimodular restriction, pairwise
    /// orthogonal, and together spanning all of `H`.
    pub fn new(v1: SymplecticSubgroup, v2: SymplecticSubgroup, v3: SymplecticSubgroup) -> Result<Self> {
        let parts = [v1, v2, v3];
        for (i, p) in parts.iter().enumerate() {
            if p.rank() != 2 {
                return Err(Error::InvalidSplitting(format!("part {} has rank {}", i + 1, p.rank())));
            }
            if p.gram_matrix().det() != 1 {
                return Err(Error::InvalidSplitting(format!("part {} is not unimodular", i + 1)));
            }
        }
        for i in 0..3 {
            for j in i + 1..3 {
                if !parts[i].is_orthogonal_to(&parts[j]) {
                    return Err(Error::InvalidSplitting(format!("parts {} and {} are not orthogonal", i + 1, j + 1)));
                }
            }
        }
        let s = Splitting { parts };
        if s.stacked_basis().det().abs() != 1 {
            return Err(Error::InvalidSplitting("parts do not span H".into()));
        }
        Ok(s)
    }

    /// The splitting into the three standard handles.
    pub fn standard() -> Self {
        Splitting::new(SymplecticSubgroup::handle(1), SymplecticSubgroup::handle(2), SymplecticSubgroup::handle(3))
            .expect("standard splitting is valid")
    }

    pub fn parts(&self) -> &[SymplecticSubgroup; 3] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &SymplecticSubgroup {
        &self.parts[i]
    }

    /// The 6x6 matrix whose rows are the part bases, in order.
    pub fn stacked_basis(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self.parts.iter().flat_map(|p| p.basis().iter().map(|v| v.0.to_vec())).collect();
        IntMatrix::from_rows(&rows, DIM)
    }

    /// Reorders parts: the result has `parts[perm[i]]` in slot `i`.
    pub fn permuted(&self, perm: [usize; 3]) -> Splitting {
        Splitting { parts: perm.map(|i| self.parts[i].clone()) }
    }

    /// Key of the underlying unordered splitting.
    pub fn key(&self) -> SplittingKey {
        let mut keys = self.parts.clone().map(|p| p.key());
        keys.sort();
        keys
    }

    /// The ordering of the same parts with ascending part keys.
    pub fn canonical(&self) -> Splitting {
        let mut parts = self.parts.clone();
        parts.sort();
        Splitting { parts }
    }

    /// Components `x = x1 + x2 + x3` with `x_i` in part `i`.
    ///
    /// For a part with basis `(v, w)` and `g = <v, w> = ±1`, orthogonality of
    /// the other parts gives the component `(<x,w> v - <x,v> w) / g`.
    pub fn components(&self, x: &HVector) -> [HVector; 3] {
        self.parts.clone().map(|p| {
            let (v, w) = (p.basis()[0], p.basis()[1]);
            let g = intersection(&v, &w);
            debug_assert!(g == 1 || g == -1);
            let c1 = intersection(x, &w) * g;
            let c2 = -intersection(x, &v) * g;
            c1 * v + c2 * w
        })
    }

    /// Part keys, in the stored order, for JSON output.
    pub fn part_keys(&self) -> [Vec<i64>; 3] {
        self.parts.clone().map(|p| p.key())
    }
}

/// Type of a splitting with respect to a class `x`: how many parts carry a
/// nonzero component of `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum XType {
    A,
    B,
    C,
}

/// Type of a splitting with respect to `y` once `x` lies in the first part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum YType {
    One,
    Two,
    Three,
    Four,
}

/// Classifies `s` with respect to `x`.
///
/// Returns the type together with a permutation `perm` such that
/// `s.permuted(perm)` lists the parts with nonzero components first (in
/// their original relative order).
pub fn splitting_type_wrt_x(x: &HVector, s: &Splitting) -> Result<(XType, [usize; 3])> {
    if x.is_zero() {
        return Err(Error::Degenerate("x = 0".into()));
    }
    let comps = s.components(x);
    let (nonzero, zero): (Vec<usize>, Vec<usize>) = (0..3).partition(|&i| !comps[i].is_zero());
    let perm: [usize; 3] = nonzero.iter().chain(&zero).copied().collect::<Vec<_>>().try_into().unwrap();
    let t = match nonzero.len() {
        1 => XType::A,
        2 => XType::B,
        3 => XType::C,
        _ => unreachable!("nonzero x has a nonzero component"),
    };
    Ok((t, perm))
}

/// Classifies `s` with respect to `y`, given that `s` is of type (a) with
/// respect to `x`.
///
/// The returned permutation puts the part containing `x` first and
/// renumbers the other two so that the definition's alternatives apply.
pub fn splitting_type_wrt_y(x: &HVector, y: &HVector, s: &Splitting) -> Result<(YType, [usize; 3])> {
    if y.is_zero() {
        return Err(Error::Degenerate("y = 0".into()));
    }
    let (xt, xperm) = splitting_type_wrt_x(x, s)?;
    if xt != XType::A {
        return Err(Error::Precondition(format!("splitting is of type {xt:?} w.r.t. x, not A")));
    }
    let i1 = xperm[0];
    let (mut i2, mut i3) = (xperm[1].min(xperm[2]), xperm[1].max(xperm[2]));
    let c = s.components(y);
    let nz = |i: usize| !c[i].is_zero();
    let t = match (nz(i1), nz(i2), nz(i3)) {
        (false, true, false) => YType::One,
        (false, false, true) => {
            std::mem::swap(&mut i2, &mut i3);
            YType::One
        }
        (true, true, false) => YType::Two,
        (true, false, true) => {
            std::mem::swap(&mut i2, &mut i3);
            YType::Two
        }
        (false, true, true) => YType::Three,
        (true, true, true) => YType::Four,
        _ => return Err(Error::Precondition(format!("y = {y} has no component outside the part containing x"))),
    };
    Ok((t, [i1, i2, i3]))
}

/// All nonzero vectors with every coordinate in `[-bound, bound]`.
fn box_vectors(bound: i64) -> Vec<HVector> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow(DIM as u32);
    (0..total)
        .map(|mut n| {
            let mut c = [0i64; DIM];
            for slot in c.iter_mut() {
                *slot = (n % side) as i64 - bound;
                n /= side;
            }
            HVector(c)
        })
        .filter(|v| !v.is_zero())
        .collect()
}

/// Rank-2 unimodular subgroups spanned by a pair of vectors with entries in
/// `[-bound, bound]`, in ascending key order.
pub fn symplectic_pairs_within(bound: i64) -> Vec<SymplecticSubgroup> {
    let vecs = box_vectors(bound);
    let mut out = BTreeSet::new();
    for (i, u) in vecs.iter().enumerate() {
        for v in &vecs[i + 1..] {
            if intersection(u, v).abs() == 1 {
                out.insert(SymplecticSubgroup::span_unimodular_pair(u, v));
            }
        }
    }
    out.into_iter().collect()
}

/// Unordered splittings whose three parts are each spanned by a pair of
/// vectors with entries in `[-bound, bound]`.
///
/// Each splitting is returned once, parts in ascending key order, and the
/// list is sorted.
pub fn enumerate_splittings(bound: i64) -> Vec<Splitting> {
    assert!(bound >= 1, "coefficient bound must be positive");
    let vecs = box_vectors(bound);
    let subgroups = symplectic_pairs_within(bound);
    let members: HashSet<&SymplecticSubgroup> = subgroups.iter().collect();
    let mut out = Vec::new();
    for u in &subgroups {
        let perp: Vec<HVector> =
            vecs.iter().filter(|v| u.basis().iter().all(|b| intersection(b, v) == 0)).copied().collect();
        let mut seen = HashSet::new();
        for (i, p) in perp.iter().enumerate() {
            for q in &perp[i + 1..] {
                if intersection(p, q).abs() != 1 {
                    continue;
                }
                let v = SymplecticSubgroup::span_unimodular_pair(p, q);
                if v <= *u || !seen.insert(v.clone()) {
                    continue;
                }
                // The third part is the complement of U ⊕ V. It belongs to the
                // family iff some pair of box vectors orthogonal to both spans it.
                let rest: Vec<&HVector> =
                    perp.iter().filter(|r| v.basis().iter().all(|b| intersection(b, r) == 0)).collect();
                let w = rest.iter().enumerate().find_map(|(k, r)| {
                    rest[k + 1..]
                        .iter()
                        .find(|t| intersection(r, t).abs() == 1)
                        .map(|t| SymplecticSubgroup::span_unimodular_pair(r, t))
                });
                if let Some(w) = w {
                    debug_assert!(members.contains(&w));
                    if w > v {
                        out.push(Splitting { parts: [u.clone(), v, w] });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(j: usize) -> HVector {
        HVector::a(j)
    }
    fn b(j: usize) -> HVector {
        HVector::b(j)
    }

    #[test]
    fn standard_is_valid() {
        let s = Splitting::standard();
        assert_eq!(s.stacked_basis().det().abs(), 1);
    }

    #[test]
    fn rejects_non_orthogonal() {
        let v1 = SymplecticSubgroup::span(&[a(1), b(1) + a(2)]).unwrap();
        let r = Splitting::new(v1, SymplecticSubgroup::handle(2), SymplecticSubgroup::handle(3));
        assert!(matches!(r, Err(Error::InvalidSplitting(_))));
    }

    #[test]
    fn components_sum_back() {
        let v1 = SymplecticSubgroup::span(&[a(1) + a(2), b(1)]).unwrap();
        let v2 = SymplecticSubgroup::span(&[a(2), b(2) - b(1)]).unwrap();
        let s = Splitting::new(v1, v2, SymplecticSubgroup::handle(3)).unwrap();
        let x = 2 * a(1) - b(2) + 5 * b(3);
        let c = s.components(&x);
        assert_eq!(c.iter().copied().sum::<HVector>(), x);
        for (i, ci) in c.iter().enumerate() {
            assert!(s.part(i).contains(ci));
        }
    }

    #[test]
    fn x_types() {
        let s = Splitting::standard();
        assert_eq!(splitting_type_wrt_x(&a(1), &s).unwrap().0, XType::A);
        assert_eq!(splitting_type_wrt_x(&(a(1) + a(2)), &s).unwrap().0, XType::B);
        assert_eq!(splitting_type_wrt_x(&(a(1) + a(2) + a(3)), &s).unwrap().0, XType::C);
        assert_eq!(splitting_type_wrt_x(&a(3), &s).unwrap(), (XType::A, [2, 0, 1]));
        assert!(splitting_type_wrt_x(&HVector::ZERO, &s).is_err());
    }

    #[test]
    fn y_types() {
        let s = Splitting::standard();
        let x = a(1);
        assert_eq!(splitting_type_wrt_y(&x, &a(2), &s).unwrap().0, YType::One);
        assert_eq!(splitting_type_wrt_y(&x, &(b(1) + a(2)), &s).unwrap().0, YType::Two);
        assert_eq!(splitting_type_wrt_y(&x, &(a(2) + a(3)), &s).unwrap().0, YType::Three);
        assert_eq!(splitting_type_wrt_y(&x, &(b(1) + a(2) + a(3)), &s).unwrap().0, YType::Four);
        assert_eq!(splitting_type_wrt_y(&x, &a(3), &s).unwrap(), (YType::One, [0, 2, 1]));
        assert!(splitting_type_wrt_y(&x, &b(1), &s).is_err());
        assert!(splitting_type_wrt_y(&(a(1) + a(2)), &a(3), &s).is_err());
    }
}
