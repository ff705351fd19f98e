//! Truncated `E^1` pages of the spectral sequence for the Torelli group
//! acting on the complex of cycles.
//!
//! Stabilizer homology is symbolic: each position carries the explicit
//! generators known for its cell types, labelled by a cell orbit and a
//! [`GeneratorTag`]. Differentials are assembled as sparse integer matrices
//! between such labels and judged by exact Smith normal form.

mod d13;
mod d22;
mod d31;
mod vanishing;

pub(crate) use d13::type_c_generators;
pub use d13::{
    d13_apply, d13_tilde_apply, e2_13_kernel, e2_13_tilde_kernel, expected_kernel_13, expected_kernel_13_tilde,
    splitting_counts_x, splitting_counts_y, KernelReport,
};
pub use d22::{d22_apply, ladder_subgroups, FAMILIES};
pub use d31::{d31_apply, m3_prime_face_signs};
pub use vanishing::{tilde_e04_witnesses, vanishing_census, TildeWitness, VanishingEntry};

use crate::cycles::CellInstance;
use crate::error::{Error, Result};
use crate::lattice::{
    hermite_rows, intersection, kernel_basis, smith_normal_form, symplectic_pairs_within, HVector, IntMatrix,
    Splitting, SplittingKey, SymplecticSubgroup,
};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// The homology class carried by a generator of a stabilizer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorTag {
    /// `[T_δ^k T_{γ1} T_{γ2}^{-1} T_δ^{-k}]`.
    BPTwist {
        k: i64,
    },
    SepTwist {
        u: SymplecticSubgroup,
    },
    A2 {
        u: SymplecticSubgroup,
    },
    /// `A_{U1,U2}`, stored with `u1 < u2`; see [`GeneratorTag::a2_pair`].
    A2Pair {
        u1: SymplecticSubgroup,
        u2: SymplecticSubgroup,
    },
    A3 {
        splitting: SplittingKey,
    },
}

impl GeneratorTag {
    /// `A_{U1,U2}` in canonical order together with the sign it picks up,
    /// using `A_{U1,U2} = -A_{U2,U1}`.
    pub fn a2_pair(u1: &SymplecticSubgroup, u2: &SymplecticSubgroup) -> Result<(i64, GeneratorTag)> {
        if u1.rank() != 2 || u2.rank() != 2 || !u1.is_orthogonal_to(u2) {
            return Err(Error::Admissibility("A_{U1,U2} needs orthogonal rank-2 parts".into()));
        }
        if u1 == u2 {
            return Err(Error::Admissibility("A_{U,U} is not a generator".into()));
        }
        Ok(if u1 < u2 {
            (1, GeneratorTag::A2Pair { u1: u1.clone(), u2: u2.clone() })
        } else {
            (-1, GeneratorTag::A2Pair { u1: u2.clone(), u2: u1.clone() })
        })
    }

    pub fn a3(s: &Splitting) -> GeneratorTag {
        GeneratorTag::A3 { splitting: s.key() }
    }
}

/// A basis element `P ⊗ h` of a truncated page.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisLabel {
    pub orbit: String,
    pub tag: GeneratorTag,
}

impl BasisLabel {
    pub fn new(orbit: impl Into<String>, tag: GeneratorTag) -> Self {
        BasisLabel { orbit: orbit.into(), tag }
    }
}

/// A page position; `tilde` selects the page of the auxiliary complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub p: usize,
    pub q: usize,
    pub tilde: bool,
}

impl Position {
    pub const fn new(p: usize, q: usize) -> Self {
        Position { p, q, tilde: false }
    }

    pub const fn tilde(p: usize, q: usize) -> Self {
        Position { p, q, tilde: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationParams {
    /// Conjugation range `|k| <= K` (also the ladder truncation).
    pub k: i64,
    /// Coefficient bound for subgroup and splitting enumeration.
    pub height: i64,
    /// `x = m·α + n·y` for the ladder.
    pub mn: (i64, i64),
    /// Optional cap on the number of splittings taken (a prefix of the sorted list).
    pub max_splittings: Option<usize>,
    pub x: HVector,
    pub y: HVector,
}

impl Default for TruncationParams {
    fn default() -> Self {
        TruncationParams {
            k: 2,
            height: 1,
            mn: (1, 1),
            max_splittings: None,
            x: HVector::a(1),
            y: HVector::a(2) + HVector::a(3),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Truncation {
    pub position: Position,
    pub basis: Vec<BasisLabel>,
    pub params: TruncationParams,
}

impl E1Truncation {
    pub fn new(position: Position, basis: Vec<BasisLabel>, params: TruncationParams) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for b in &basis {
            if !seen.insert(b) {
                return Err(Error::DuplicateKey(format!("{b:?}")));
            }
        }
        Ok(E1Truncation { position, basis, params })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index(&self) -> HashMap<&BasisLabel, usize> {
        self.basis.iter().enumerate().map(|(i, b)| (b, i)).collect()
    }
}

/// Integer matrix with labelled rows and columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseIntMatrix {
    pub rows: Vec<BasisLabel>,
    pub cols: Vec<BasisLabel>,
    pub entries: BTreeMap<(usize, usize), i64>,
}

impl SparseIntMatrix {
    pub fn new(rows: Vec<BasisLabel>, cols: Vec<BasisLabel>) -> Self {
        SparseIntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        let e = self.entries.entry((r, c)).or_insert(0);
        *e += v;
        if *e == 0 {
            self.entries.remove(&(r, c));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries.get(&(r, c)).copied().unwrap_or(0)
    }

    /// Nonzero entries of column `c` as (row, value).
    pub fn column(&self, c: usize) -> Vec<(usize, i64)> {
        self.entries.iter().filter(|(&(_, j), _)| j == c).map(|(&(i, _), &v)| (i, v)).collect()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut rows = vec![vec![0; self.cols.len()]; self.rows.len()];
        for (&(r, c), &v) in &self.entries {
            rows[r][c] = v;
        }
        IntMatrix::from_rows(&rows, self.cols.len())
    }

    /// Connected components of the row/column incidence graph. Zero
    /// columns form blocks of their own with no rows.
    pub fn blocks(&self) -> Vec<Block> {
        let nc = self.cols.len();
        let nr = self.rows.len();
        // Union-find over columns then rows (rows offset by nc).
        let mut parent: Vec<usize> = (0..nc + nr).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for &(r, c) in self.entries.keys() {
            let (a, b) = (find(&mut parent, c), find(&mut parent, nc + r));
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Block> = BTreeMap::new();
        for c in 0..nc {
            let root = find(&mut parent, c);
            groups.entry(root).or_default().cols.push(c);
        }
        for r in 0..nr {
            let root = find(&mut parent, nc + r);
            groups.entry(root).or_default().rows.push(r);
        }
        for (&(r, c), &v) in &self.entries {
            let root = find(&mut parent, c);
            groups.get_mut(&root).expect("column has a block").entries.push((r, c, v));
        }
        groups.into_values().filter(|b| !b.cols.is_empty()).collect()
    }

    /// Exact rank, computed block by block.
    pub fn rank(&self) -> usize {
        self.blocks().iter().map(|b| if b.rows.is_empty() { 0 } else { smith_normal_form(&b.dense()).rank() }).sum()
    }

    /// Invariant factors of all blocks that are not units.
    pub fn torsion(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .blocks()
            .iter()
            .filter(|b| !b.rows.is_empty())
            .flat_map(|b| smith_normal_form(&b.dense()).torsion())
            .collect();
        out.sort_unstable();
        out
    }

    /// A basis of the integer kernel as sparse vectors `(column, value)`.
    /// Every vector is supported inside one block.
    pub fn kernel_basis(&self) -> Vec<Vec<(usize, i64)>> {
        let mut out = Vec::new();
        for b in self.blocks() {
            let local: Vec<Vec<i64>> = if b.rows.is_empty() {
                (0..b.cols.len()).map(|i| (0..b.cols.len()).map(|j| (i == j) as i64).collect()).collect()
            } else {
                kernel_basis(&b.dense())
            };
            for v in local {
                out.push(b.cols.iter().zip(&v).filter(|(_, &x)| x != 0).map(|(&c, &x)| (c, x)).collect());
            }
        }
        out
    }

    /// Product `self · other` (column labels of `self` must be the row
    /// labels of `other`).
    pub fn compose(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Inconsistent("composed matrices do not share a basis".into()));
        }
        let mut by_col: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for (&(i, k), &w) in &self.entries {
            by_col.entry(k).or_default().push((i, w));
        }
        let mut out = SparseIntMatrix::new(self.rows.clone(), other.cols.clone());
        for (&(k, j), &v) in &other.entries {
            for &(i, w) in by_col.get(&k).map_or(&[][..], |c| &c[..]) {
                out.add(i, j, w * v);
            }
        }
        Ok(out)
    }
}

/// A connected block of a sparse matrix.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `(row, column, value)` in global indices.
    pub entries: Vec<(usize, usize, i64)>,
}

impl Block {
    pub fn dense(&self) -> IntMatrix {
        let rpos: HashMap<usize, usize> = self.rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let cpos: HashMap<usize, usize> = self.cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut m = vec![vec![0; self.cols.len()]; self.rows.len()];
        for &(r, c, v) in &self.entries {
            m[rpos[&r]][cpos[&c]] = v;
        }
        IntMatrix::from_rows(&m, self.cols.len())
    }
}

/// Dense form of a sparse vector.
pub fn densify(v: &[(usize, i64)], n: usize) -> Vec<i64> {
    let mut out = vec![0; n];
    for &(i, x) in v {
        out[i] = x;
    }
    out
}

/// Whether the integer kernel is zero: SNF rank equals the column count.
pub fn check_injective(mat: &SparseIntMatrix) -> bool {
    mat.rank() == mat.cols.len()
}

/// Whether two lists of integer vectors span the same lattice.
pub fn same_lattice(a: &[Vec<i64>], b: &[Vec<i64>], ncols: usize) -> bool {
    hermite_rows(a, ncols) == hermite_rows(b, ncols)
}

static PAIRS: OnceLock<Mutex<HashMap<i64, Arc<Vec<SymplecticSubgroup>>>>> = OnceLock::new();
static SPLITTINGS: OnceLock<Mutex<HashMap<i64, Arc<Vec<Splitting>>>>> = OnceLock::new();

fn cached_pairs(height: i64) -> Arc<Vec<SymplecticSubgroup>> {
    let mut m = PAIRS.get_or_init(Default::default).lock().expect("cache lock");
    m.entry(height).or_insert_with(|| Arc::new(symplectic_pairs_within(height))).clone()
}

/// The sorted splitting family at a height, shared between callers.
pub fn splitting_family(height: i64) -> Arc<Vec<Splitting>> {
    let mut m = SPLITTINGS.get_or_init(Default::default).lock().expect("cache lock");
    m.entry(height).or_insert_with(|| Arc::new(crate::lattice::enumerate_splittings(height))).clone()
}

/// Splittings selected by the truncation: a prefix of the sorted family.
pub fn truncated_splittings(params: &TruncationParams) -> Vec<Splitting> {
    let fam = splitting_family(params.height);
    let n = params.max_splittings.unwrap_or(fam.len()).min(fam.len());
    fam[..n].to_vec()
}

/// Rank-2 symplectic `U` (spanned by vectors of bounded height) orthogonal
/// to every curve of the cell and meeting their span trivially. When the
/// cell has a decomposition graph, some complementary component must have
/// positive genus to hold the torus cut off by `U`.
pub fn admissible_subgroups(cell: &CellInstance, height: i64) -> Vec<SymplecticSubgroup> {
    if let Some(g) = &cell.graph {
        if g.genera().iter().all(|&h| h == 0) {
            return Vec::new();
        }
    }
    let base = if cell.classes.is_empty() {
        0
    } else {
        crate::lattice::rank(&IntMatrix::from_cols(&cell.classes.iter().map(|c| c.0.to_vec()).collect::<Vec<_>>(), 6))
    };
    cached_pairs(height)
        .iter()
        .filter(|u| u.basis().iter().all(|b| cell.classes.iter().all(|c| intersection(b, c) == 0)))
        .filter(|u| {
            let mut cols: Vec<Vec<i64>> = cell.classes.iter().map(|c| c.0.to_vec()).collect();
            cols.extend(u.basis().iter().map(|b| b.0.to_vec()));
            crate::lattice::rank(&IntMatrix::from_cols(&cols, 6)) == base + 2
        })
        .cloned()
        .collect()
}

/// A readable identifier for a splitting, stable under enlarging families.
pub fn splitting_label(s: &Splitting) -> String {
    let parts: Vec<String> = s
        .canonical()
        .parts()
        .iter()
        .map(|p| p.basis().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("[{}]", parts.join(" | "))
}

/// Builds the truncated basis at a supported position.
pub fn build_e1(position: Position, params: &TruncationParams) -> Result<E1Truncation> {
    let basis = match (position.p, position.q, position.tilde) {
        (3, 1, false) => d31::source_basis(params),
        (2, 1, false) => d31::target_basis(params),
        (2, 2, false) => d22::source_basis(params)?,
        (1, 2, false) => d22::target_basis(params)?,
        (1, 3, false) => d13::source_basis(params)?,
        (0, 3, false) => d13::target_basis(params)?,
        (1, 3, true) => d13::tilde_source_basis(params)?,
        (0, 3, true) => d13::tilde_target_basis(params)?,
        // Every extended vertex stabilizer has cohomological dimension < 4.
        (0, 4, true) => {
            if vanishing::tilde_e04_witnesses()?.iter().all(|w| w.extended_cd < 4) {
                Vec::new()
            } else {
                return Err(Error::Inconsistent("a vertex stabilizer of the auxiliary complex carries H_4".into()));
            }
        }
        (p, q, _) => return Err(Error::UnsupportedPosition(p, q)),
    };
    E1Truncation::new(position, basis, params.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{DecompGraph, LabeledMulticurve};

    fn label(i: usize) -> BasisLabel {
        BasisLabel::new(format!("c{i}"), GeneratorTag::BPTwist { k: 0 })
    }

    fn matrix(rows: &[&[i64]]) -> SparseIntMatrix {
        let nc = rows.first().map_or(0, |r| r.len());
        let mut m = SparseIntMatrix::new((0..rows.len()).map(label).collect(), (0..nc).map(label).collect());
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v != 0 {
                    m.add(i, j, v);
                }
            }
        }
        m
    }

    #[test]
    fn injectivity_examples() {
        assert!(check_injective(&matrix(&[&[1], &[-1]])));
        assert!(!check_injective(&matrix(&[&[2, 0], &[0, 0]])));
        assert!(check_injective(&matrix(&[&[2]])));
        let empty = SparseIntMatrix::new(vec![label(0)], vec![]);
        assert!(check_injective(&empty));
    }

    #[test]
    fn block_kernel_matches_dense_kernel() {
        let m = matrix(&[&[1, 1, 0, 0], &[0, 0, 1, -1], &[0, 0, 2, -2]]);
        let k: Vec<Vec<i64>> = m.kernel_basis().iter().map(|v| densify(v, 4)).collect();
        assert_eq!(k.len(), 2);
        assert!(same_lattice(&k, &kernel_basis(&m.to_dense()), 4));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn a2_pair_sign_convention() {
        let u = SymplecticSubgroup::handle(1);
        let v = SymplecticSubgroup::handle(2);
        let (s1, t1) = GeneratorTag::a2_pair(&u, &v).unwrap();
        let (s2, t2) = GeneratorTag::a2_pair(&v, &u).unwrap();
        assert_eq!(t1, t2);
        assert_eq!(s1, -s2);
        assert!(GeneratorTag::a2_pair(&u, &u).is_err());
    }

    #[test]
    fn admissible_examples() {
        let g = DecompGraph::new(vec![1, 1], vec![(0, 1), (1, 0)]).unwrap();
        let m = LabeledMulticurve::new(g, vec![HVector::a(1), HVector::a(1)], HVector::a(1)).unwrap();
        let cell = CellInstance::from_multicurve(&m).unwrap();
        let us = admissible_subgroups(&cell, 1);
        assert!(us.contains(&SymplecticSubgroup::handle(2)));
        assert!(us.contains(&SymplecticSubgroup::handle(3)));
        assert!(!us.contains(&SymplecticSubgroup::handle(1)));
        for u in &us {
            assert!(u.basis().iter().all(|b| intersection(b, &HVector::a(1)) == 0));
        }
    }

    #[test]
    fn rejects_unsupported_positions() {
        assert_eq!(build_e1(Position::new(5, 0), &TruncationParams::default()), Err(Error::UnsupportedPosition(5, 0)));
        assert!(build_e1(Position::new(0, 4), &TruncationParams::default()).is_err());
    }
}
