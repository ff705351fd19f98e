//! Property tests for the algebraic invariants the computations rely on.

use proptest::prelude::*;
use torelli::cycles::{boundary_squared, build_ladder, cell_dim, CellInstance, LadderCellTag};
use torelli::lattice::{
    intersection, kernel_basis, rank, rank_by_elimination, smith_normal_form, HVector, IntMatrix, Splitting,
    SymplecticSubgroup,
};
use torelli::sclasses::{
    cup_det_pair, detection_configuration, lantern_check, lantern_from_boundary, normal_form, quotient_image,
    transvection, transvection_word, SClassElement, PERMS,
};
use torelli::surface::classify_types;

fn vector(bound: i64) -> impl Strategy<Value = HVector> {
    prop::array::uniform6(-bound..=bound).prop_map(HVector)
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c), r)
            .prop_map(move |rows| IntMatrix::from_rows(&rows, c))
    })
}

/// A handful of splittings, each usable in every ordering.
fn splittings() -> Vec<Splitting> {
    let (a, b) = (HVector::a, HVector::b);
    let span = |u, v| SymplecticSubgroup::span(&[u, v]).unwrap();
    vec![
        Splitting::standard(),
        Splitting::new(SymplecticSubgroup::handle(3), span(b(1) - a(2), b(2)), span(a(1) - b(2), b(1))).unwrap(),
        Splitting::new(span(a(1), b(1) + a(2)), span(a(2), a(1) + b(2)), SymplecticSubgroup::handle(3)).unwrap(),
    ]
}

fn element() -> impl Strategy<Value = SClassElement> {
    prop::collection::vec((0usize..3, 0usize..6, -4i64..=4), 0..8).prop_map(|terms| {
        let family = splittings();
        let mut e = SClassElement::zero();
        for (s, p, c) in terms {
            e.add_term(family[s].permuted(PERMS[p]), c);
        }
        e
    })
}

proptest! {
    #[test]
    fn smith_form_diagonalizes(m in matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.left.mul(&m).mul(&snf.right), snf.diag.clone());
        prop_assert_eq!(snf.left.det().abs(), 1);
        prop_assert_eq!(snf.right.det().abs(), 1);
        let nonzero: Vec<i64> = snf.factors.iter().copied().filter(|&f| f != 0).collect();
        for w in nonzero.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        prop_assert_eq!(rank(&m), rank_by_elimination(&m));
    }

    #[test]
    fn kernel_vectors_are_killed(m in matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.len() + rank(&m), m.cols());
        for v in k {
            prop_assert!(m.mul_vec(&v).iter().all(|&t| t == 0));
        }
    }

    #[test]
    fn intersection_is_alternating(u in vector(5), v in vector(5), w in vector(5)) {
        prop_assert_eq!(intersection(&u, &u), 0);
        prop_assert_eq!(intersection(&u, &v), -intersection(&v, &u));
        prop_assert_eq!(intersection(&(u + v), &w), intersection(&u, &w) + intersection(&v, &w));
    }

    #[test]
    fn transvections_are_symplectic(c in vector(3), v in vector(3)) {
        let t = transvection(&c);
        let j = torelli::lattice::gram();
        prop_assert_eq!(t.transpose().mul(&j).mul(&t), j);
        let tv = HVector(t.mul_vec(&v.0).try_into().unwrap());
        prop_assert_eq!(tv, v + intersection(&v, &c) * c);
    }

    #[test]
    fn twists_about_disjoint_classes_commute(c1 in vector(2), v in vector(2), w in vector(2)) {
        let c2 = intersection(&c1, &w) * v - intersection(&c1, &v) * w;
        prop_assert_eq!(intersection(&c1, &c2), 0);
        prop_assert_eq!(transvection_word(&[(c1, 1), (c2, 1)]), transvection_word(&[(c2, 1), (c1, 1)]));
    }

    #[test]
    fn lantern_holds_on_isotropic_boundaries(x in prop::array::uniform6(-3i64..=3)) {
        // Boundary classes in the Lagrangian spanned by a1, a2, a3.
        let l = |p: i64, q: i64| HVector::new([p, 0, q, 0, x[4] - p, 0]);
        let c = lantern_from_boundary("random", l(x[0], x[1]), l(x[2], x[3]), l(x[5], x[0] - x[2])).unwrap();
        prop_assert!(lantern_check(&c).unwrap());
    }

    #[test]
    fn normal_form_is_an_idempotent_projection(a in element(), b in element(), k in -3i64..=3) {
        let na = normal_form(&a);
        prop_assert_eq!(normal_form(&na), na.clone());
        prop_assert_eq!(normal_form(&(a.clone() + b.clone())), na.clone() + normal_form(&b));
        prop_assert_eq!(normal_form(&(k * a.clone())), k * na.clone());
        prop_assert_eq!(quotient_image(&na), quotient_image(&a));
        prop_assert!(normal_form(&(a.clone() - a)).is_zero());
    }

    #[test]
    fn cup_pairing_is_alternating(i in 0usize..3, j in 0usize..3, p in 0usize..4, q in 0usize..4) {
        let c = detection_configuration().unwrap();
        let gens = [c.theta.clone(), c.bounding_pairs[0].clone(), c.bounding_pairs[1].clone(), c.bounding_pairs[2].clone()];
        let v = cup_det_pair(&c.nus[i], &c.nus[j], &gens[p], &gens[q]).unwrap();
        prop_assert_eq!(v, -cup_det_pair(&c.nus[j], &c.nus[i], &gens[p], &gens[q]).unwrap());
        prop_assert_eq!(v, -cup_det_pair(&c.nus[i], &c.nus[j], &gens[q], &gens[p]).unwrap());
    }

    #[test]
    fn ladder_potential_values(m in 1i64..4, d in 0i64..5, k in 1i64..4) {
        let n = m + d;
        prop_assume!(num_gcd(m, n) == 1);
        let lad = build_ladder(m, n, k).unwrap();
        prop_assert!(lad.check_invariants().is_ok());
        let psi = |t| lad.psi(lad.cell_index(t).unwrap()).unwrap();
        prop_assert_eq!(psi(LadderCellTag::Rect(0)), m + n);
        prop_assert_eq!(psi(LadderCellTag::Rect(-1)), 2 * m + n);
        prop_assert_eq!(psi(LadderCellTag::NeighbourTriangle { k: 0, plus: true }), m + 2 * n);
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn boundary_of_boundary_vanishes_on_census() {
    for p in 1..=3 {
        for t in classify_types(p) {
            let cell = CellInstance::from_multicurve(&t.witness).unwrap();
            assert_eq!(cell_dim(&cell).unwrap(), p);
            assert!(boundary_squared(&cell).unwrap().is_empty(), "{}", t.name);
        }
    }
}
