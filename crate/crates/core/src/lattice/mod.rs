//! The symplectic lattice `H = Z^6` with basis `(a1, b1, a2, b2, a3, b3)`.
//!
//! `<a_i, b_i> = 1`, all other basis pairings vanish except by
//! antisymmetry. Sublattices are kept in Hermite row form so equal
//! sublattices compare equal field by field.

pub mod matrix;
mod splitting;

pub use matrix::{
    hermite_rows, kernel_basis, rank, rank_by_elimination, smith_normal_form, solve_unique, IntMatrix, Snf,
};
pub use splitting::{
    enumerate_splittings, splitting_type_wrt_x, splitting_type_wrt_y, symplectic_pairs_within, Splitting, SplittingKey,
    XType, YType,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const DIM: usize = 6;

/// An element of `H`, coordinates in the ordered symplectic basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct HVector(pub [i64; DIM]);

impl HVector {
    pub const ZERO: HVector = HVector([0; DIM]);

    pub fn new(coords: [i64; DIM]) -> Self {
        HVector(coords)
    }

    /// The basis vector `a_j`, `j` in `1..=3`.
    pub fn a(j: usize) -> Self {
        assert!((1..=3).contains(&j), "handle index {j} out of range");
        let mut c = [0; DIM];
        c[2 * (j - 1)] = 1;
        HVector(c)
    }

    /// The basis vector `b_j`, `j` in `1..=3`.
    pub fn b(j: usize) -> Self {
        assert!((1..=3).contains(&j), "handle index {j} out of range");
        let mut c = [0; DIM];
        c[2 * (j - 1) + 1] = 1;
        HVector(c)
    }

    pub fn coords(&self) -> &[i64; DIM] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| num_integer::gcd(g, x))
    }

    /// `self` or `-self`, whichever has its first nonzero coordinate positive.
    pub fn sign_normalized(&self) -> HVector {
        match self.0.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => -*self,
            _ => *self,
        }
    }
}

impl fmt::Debug for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["a1", "b1", "a2", "b2", "a3", "b3"];
        let mut first = true;
        for (c, n) in self.0.iter().zip(names) {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}{n}")?;
            } else {
                write!(f, "{sign}{mag}{n}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for HVector {
    type Output = HVector;
    fn add(self, o: HVector) -> HVector {
        HVector(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for HVector {
    type Output = HVector;
    fn sub(self, o: HVector) -> HVector {
        HVector(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for HVector {
    type Output = HVector;
    fn neg(self) -> HVector {
        HVector(self.0.map(|x| -x))
    }
}

impl Mul<HVector> for i64 {
    type Output = HVector;
    fn mul(self, v: HVector) -> HVector {
        HVector(v.0.map(|x| self * x))
    }
}

impl std::iter::Sum for HVector {
    fn sum<I: Iterator<Item = HVector>>(iter: I) -> HVector {
        iter.fold(HVector::ZERO, |a, b| a + b)
    }
}

/// The Gram matrix of the intersection form in the ordered basis.
pub fn gram() -> IntMatrix {
    let mut g = IntMatrix::zeros(DIM, DIM);
    for j in 0..3 {
        g[(2 * j, 2 * j + 1)] = 1;
        g[(2 * j + 1, 2 * j)] = -1;
    }
    g
}

/// Algebraic intersection number `u^T J v`.
pub fn intersection(u: &HVector, v: &HVector) -> i64 {
    (0..3).map(|j| u.0[2 * j] * v.0[2 * j + 1] - u.0[2 * j + 1] * v.0[2 * j]).sum()
}

/// Writes `x = k * a` with `k >= 1` and `a` primitive.
pub fn primitive_part(x: &HVector) -> Result<(i64, HVector)> {
    if x.is_zero() {
        return Err(Error::Degenerate("primitive part of the zero class".into()));
    }
    let k = x.content();
    Ok((k, HVector(x.0.map(|c| c / k))))
}

/// A primitive sublattice of `H`, stored by its Hermite row basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymplecticSubgroup {
    basis: Vec<HVector>,
}

impl fmt::Debug for SymplecticSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ">")
    }
}

impl SymplecticSubgroup {
    /// The subgroup spanned by `gens`. Fails with [`Error::NotPrimitive`]
    /// when the span is not saturated in `H`.
    pub fn span(gens: &[HVector]) -> Result<Self> {
        let rows: Vec<Vec<i64>> = gens.iter().map(|v| v.0.to_vec()).collect();
        let h = hermite_rows(&rows, DIM);
        if !h.is_empty() {
            let snf = smith_normal_form(&IntMatrix::from_rows(&h, DIM));
            if snf.factors.iter().any(|&d| d != 1) {
                return Err(Error::NotPrimitive);
            }
        }
        Ok(Self::from_hermite(h))
    }

    /// The primitive closure `(Q gens) ∩ H`.
    pub fn saturation(gens: &[HVector]) -> Self {
        let m = IntMatrix::from_rows(&gens.iter().map(|v| v.0.to_vec()).collect::<Vec<_>>(), DIM);
        let ker = kernel_basis(&m);
        let rows = if ker.is_empty() {
            IntMatrix::identity(DIM).to_rows()
        } else {
            kernel_basis(&IntMatrix::from_rows(&ker, DIM))
        };
        Self::from_hermite(hermite_rows(&rows, DIM))
    }

    /// Span of a pair with `<u, v> = ±1`; such a pair is always primitive,
    /// so the Smith normal form check of [`span`](Self::span) is skipped.
    pub(crate) fn span_unimodular_pair(u: &HVector, v: &HVector) -> Self {
        debug_assert_eq!(intersection(u, v).abs(), 1);
        Self::from_hermite(hermite_rows(&[u.0.to_vec(), v.0.to_vec()], DIM))
    }

    fn from_hermite(h: Vec<Vec<i64>>) -> Self {
        let basis = h.into_iter().map(|r| HVector(r.try_into().expect("row of length 6"))).collect();
        SymplecticSubgroup { basis }
    }

    pub fn whole() -> Self {
        Self::from_hermite(IntMatrix::identity(DIM).to_rows())
    }

    pub fn zero() -> Self {
        SymplecticSubgroup { basis: vec![] }
    }

    /// `span(a_j, b_j)`.
    pub fn handle(j: usize) -> Self {
        Self::span(&[HVector::a(j), HVector::b(j)]).expect("handle is primitive")
    }

    pub fn basis(&self) -> &[HVector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Row-major key used in reports and for deterministic ordering.
    pub fn key(&self) -> Vec<i64> {
        self.basis.iter().flat_map(|v| v.0).collect()
    }

    pub fn gram_matrix(&self) -> IntMatrix {
        let r = self.rank();
        let mut g = IntMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                g[(i, j)] = intersection(&self.basis[i], &self.basis[j]);
            }
        }
        g
    }

    /// Membership test. The subgroup is saturated, so lying in its rational
    /// span is enough.
    pub fn contains(&self, v: &HVector) -> bool {
        let mut rows: Vec<Vec<i64>> = self.basis.iter().map(|b| b.0.to_vec()).collect();
        rows.push(v.0.to_vec());
        hermite_rows(&rows, DIM).len() == self.rank()
    }

    /// True when every basis vector pairs to zero with every vector of `other`.
    pub fn is_orthogonal_to(&self, other: &SymplecticSubgroup) -> bool {
        self.basis.iter().all(|u| other.basis.iter().all(|v| intersection(u, v) == 0))
    }

    /// Rank of `self ∩ other`.
    pub fn intersection_rank(&self, other: &SymplecticSubgroup) -> usize {
        let rows: Vec<Vec<i64>> = self.basis.iter().chain(&other.basis).map(|v| v.0.to_vec()).collect();
        let sum_rank = if rows.is_empty() { 0 } else { rank(&IntMatrix::from_rows(&rows, DIM)) };
        self.rank() + other.rank() - sum_rank
    }
}

/// Whether a rank-2 subgroup carries a unimodular restricted form.
pub fn is_symplectic_rank2(u: &SymplecticSubgroup) -> Result<bool> {
    if u.rank() != 2 {
        return Err(Error::InvalidRank { expected: 2, got: u.rank() });
    }
    Ok(u.gram_matrix().det() == 1)
}

/// `U^⊥ = {v : <u, v> = 0 for all u in U}`. Always primitive.
pub fn orthogonal_complement(u: &SymplecticSubgroup) -> SymplecticSubgroup {
    if u.rank() == 0 {
        return SymplecticSubgroup::whole();
    }
    let j = gram();
    let rows: Vec<Vec<i64>> =
        u.basis().iter().map(|b| IntMatrix::from_rows(&[b.0.to_vec()], DIM).mul(&j).row(0).to_vec()).collect();
    let ker = kernel_basis(&IntMatrix::from_rows(&rows, DIM));
    SymplecticSubgroup::from_hermite(hermite_rows(&ker, DIM))
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
    fn intersection_examples() {
        assert_eq!(intersection(&a(1), &b(1)), 1);
        assert_eq!(intersection(&a(1), &a(2)), 0);
        let u = a(1) + 2 * b(2);
        let v = 3 * a(2) - b(1);
        assert_eq!(intersection(&u, &v), -7);
    }

    #[test]
    fn gram_is_symplectic() {
        let g = gram();
        assert_eq!(g.det(), 1);
        assert_eq!(g.transpose(), {
            let mut n = g.clone();
            for r in 0..6 {
                for c in 0..6 {
                    n[(r, c)] = -g[(r, c)];
                }
            }
            n
        });
    }

    #[test]
    fn symplectic_rank2_examples() {
        let u = SymplecticSubgroup::span(&[a(1), b(1)]).unwrap();
        assert!(is_symplectic_rank2(&u).unwrap());
        let u = SymplecticSubgroup::span(&[a(1), a(2)]).unwrap();
        assert!(!is_symplectic_rank2(&u).unwrap());
        let u = SymplecticSubgroup::span(&[a(1) + a(2), b(1)]).unwrap();
        assert!(is_symplectic_rank2(&u).unwrap());
        let u = SymplecticSubgroup::span(&[a(1)]).unwrap();
        assert!(matches!(is_symplectic_rank2(&u), Err(Error::InvalidRank { .. })));
    }

    #[test]
    fn complement_examples() {
        let u = SymplecticSubgroup::handle(1);
        let c = orthogonal_complement(&u);
        let expect = SymplecticSubgroup::span(&[a(2), b(2), a(3), b(3)]).unwrap();
        assert_eq!(c, expect);
        assert_eq!(orthogonal_complement(&SymplecticSubgroup::whole()).rank(), 0);

        let u = SymplecticSubgroup::span(&[a(1) + a(2), b(1)]).unwrap();
        let c = orthogonal_complement(&u);
        assert_eq!(c.rank(), 4);
        for v in [a(3), b(3), b(2) - b(1)] {
            assert!(c.contains(&v), "{v} should lie in the complement");
        }
        assert_eq!(c.intersection_rank(&u), 0);
    }

    #[test]
    fn span_rejects_non_primitive() {
        assert_eq!(SymplecticSubgroup::span(&[2 * a(1)]), Err(Error::NotPrimitive));
        let s = SymplecticSubgroup::saturation(&[2 * a(1), a(1) + 2 * b(1)]);
        assert_eq!(s, SymplecticSubgroup::handle(1));
    }

    #[test]
    fn primitive_part_examples() {
        assert_eq!(primitive_part(&(2 * a(1))).unwrap(), (2, a(1)));
        assert_eq!(primitive_part(&(a(1) + b(3))).unwrap(), (1, a(1) + b(3)));
        assert_eq!(primitive_part(&(3 * a(1) + 6 * b(2))).unwrap(), (3, a(1) + 2 * b(2)));
        assert!(primitive_part(&HVector::ZERO).is_err());
    }

    #[test]
    fn display() {
        assert_eq!((a(1) - 2 * b(3)).to_string(), "a1-2b3");
        assert_eq!(HVector::ZERO.to_string(), "0");
    }
}
