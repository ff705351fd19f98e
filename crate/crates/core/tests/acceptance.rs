//! End-to-end acceptance run: one line per criterion, with the runtime of
//! each measured against its budget. Exits nonzero if any line fails.
//!
//! ```text
//! cargo test --test acceptance
//! ```

use std::process::ExitCode;
use std::time::{Duration, Instant};
use torelli::cycles::{build_ladder, cell_dim, CellInstance, LadderCellTag, LadderEdgeTag};
use torelli::lattice::{HVector, Splitting, SymplecticSubgroup};
use torelli::sclasses::{
    cup_det_pair, cyclic_relation_check, default_suite, detection_configuration, lantern_check,
    normal_form_kernel_is_relation_span, o_module_reduce, per_splitting_rank, rearranged_lantern_words,
    s3_equivariance_check, transvection_word, verify_suite,
};
use torelli::specseq::{
    build_e1, check_injective, d22_apply, d31_apply, e2_13_kernel, e2_13_tilde_kernel, splitting_counts_x,
    splitting_counts_y, vanishing_census, Position, TruncationParams,
};
use torelli::surface::classify_types;

type Outcome = torelli::Result<(bool, String)>;

fn census() -> Outcome {
    let counts: Vec<usize> = (0..=3).map(|p| classify_types(p).len()).collect();
    let none_above = classify_types(4).is_empty();
    Ok((counts == [3, 6, 3, 2] && none_above, format!("counts {counts:?}, dim 4 empty: {none_above}")))
}

fn dim_cd() -> Outcome {
    let mut ok = true;
    let mut seen = Vec::new();
    for p in 0..=3 {
        for t in classify_types(p) {
            let cell = CellInstance::from_multicurve(&t.witness)?;
            let dim = cell_dim(&cell)?;
            ok &= dim == p && dim as i64 + t.cd_bound() <= 4;
            if t.name == "N_1^3" || t.name == "M_0^2" {
                seen.push(format!(
                    "{} - {} - {} + {} = {}",
                    3 * 3 - 3,
                    t.p_count(),
                    t.witness.curve_count(),
                    t.bp(),
                    t.cd_bound()
                ));
            }
        }
    }
    seen.sort();
    let want = ["6 - 1 - 2 + 0 = 3", "6 - 1 - 3 + 0 = 2"];
    Ok((ok && seen == want, format!("arithmetic {seen:?}")))
}

fn d31() -> Outcome {
    let mut ok = true;
    let mut cols = Vec::new();
    for k in 1..=8 {
        let p = TruncationParams { k, ..Default::default() };
        let src = build_e1(Position::new(3, 1), &p)?;
        let tgt = build_e1(Position::new(2, 1), &p)?;
        let m = d31_apply(&src, &tgt)?;
        ok &= !src.is_empty() && check_injective(&m) && m.rank() == src.len();
        cols.push(src.len());
    }
    Ok((ok, format!("K=1..8, column counts {cols:?}")))
}

fn d22() -> Outcome {
    let mut ok = true;
    let mut checked = 0;
    for mn in [(1, 1), (1, 2), (2, 3)] {
        for k in 1..=6 {
            let p = TruncationParams { k, mn, ..Default::default() };
            let src = build_e1(Position::new(2, 2), &p)?;
            let tgt = build_e1(Position::new(1, 2), &p)?;
            let lad = build_ladder(mn.0, mn.1, k)?;
            let m = d22_apply(&src, &tgt, &lad)?;
            ok &= check_injective(&m);
            ok &= m.entries.keys().all(|&(i, j)| m.rows[i].tag == m.cols[j].tag);
            ok &= lad
                .interior_indices()
                .iter()
                .all(|&j| lad.edge_index(LadderEdgeTag::D(j)).is_some_and(|e| lad.cells_on_edge(e).len() == 3));
            let psi = |t| lad.cell_index(t).map(|c| lad.psi(c));
            let (m_, n_) = mn;
            ok &= matches!(psi(LadderCellTag::Rect(0)), Some(Ok(v)) if v == m_ + n_);
            ok &= matches!(psi(LadderCellTag::Rect(-1)), Some(Ok(v)) if v == 2 * m_ + n_);
            ok &= matches!(psi(LadderCellTag::NeighbourTriangle { k: 0, plus: true }), Some(Ok(v)) if v == m_ + 2 * n_);
            checked += 1;
        }
    }
    Ok((ok, format!("{checked} truncations")))
}

fn d13() -> Outcome {
    let (a, b) = (HVector::a, HVector::b);
    let mut ok = true;
    let mut notes = Vec::new();
    for (x, cap) in [(a(1), None), (a(1) + a(2) + a(3), None), (a(1) + b(2), Some(5000)), (a(1), Some(300))] {
        let p = TruncationParams { x, max_splittings: cap, ..Default::default() };
        let [na, nb, nc] = splitting_counts_x(&p)?;
        let k = e2_13_kernel(&p)?;
        ok &= k.kernel_rank == na + 2 * nb + 2 * nc && k.matches_pattern;
        notes.push(format!("{x}:{}", k.kernel_rank));
    }
    Ok((ok, notes.join(" ")))
}

fn tilde() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for cap in [None, Some(2000)] {
        let p = TruncationParams { max_splittings: cap, ..Default::default() };
        let n = splitting_counts_y(&p)?;
        let k = e2_13_tilde_kernel(&p)?;
        ok &= k.kernel_rank == n.iter().sum::<usize>() && k.matches_pattern;
        ok &= build_e1(Position::tilde(0, 4), &p)?.is_empty();
        notes.push(k.kernel_rank.to_string());
    }
    let census_zero = vanishing_census().iter().any(|e| e.vanishes);
    Ok((ok && census_zero, format!("kernel ranks {}", notes.join(", "))))
}

fn smodule() -> Outcome {
    let r = per_splitting_rank();
    let eq = s3_equivariance_check()?;
    let (a, b) = (HVector::a, HVector::b);
    let span = |u, v| SymplecticSubgroup::span(&[u, v]);
    let sheared = Splitting::new(SymplecticSubgroup::handle(3), span(b(1) - a(2), b(2))?, span(a(1) - b(2), b(1))?)?;
    let twisted = Splitting::new(span(a(1), b(1) + a(2))?, span(a(2), a(1) + b(2))?, SymplecticSubgroup::handle(3))?;
    let family = [Splitting::standard(), sheared, twisted];
    let nf = family.iter().all(normal_form_kernel_is_relation_span);
    let ok = r.free_rank == 2 && r.torsion.is_empty() && eq.passed() && nf;
    Ok((
        ok,
        format!(
            "free rank {}, torsion {:?}, {} equivariance checks, {} splittings",
            r.free_rank,
            r.torsion,
            eq.checked,
            family.len()
        ),
    ))
}

fn pairings() -> Outcome {
    let c = detection_configuration()?;
    let row: Vec<i64> =
        c.bounding_pairs.iter().map(|bp| cup_det_pair(&c.nus[0], &c.nus[1], bp, &c.theta)).collect::<Result<_, _>>()?;
    let reduced = o_module_reduce([1, 1, 1]);
    Ok((row == [1, -1, 0] && reduced == [0, 0], format!("values {row:?}, (1,1,1) reduces to {reduced:?}")))
}

fn lantern() -> Outcome {
    let suite = default_suite()?;
    let mut ok = suite.len() >= 5;
    for c in &suite {
        ok &= lantern_check(c)?;
    }
    ok &= verify_suite(&suite).iter().all(|o| o.passed());
    let (l, r) = rearranged_lantern_words(HVector::a(2));
    ok &= transvection_word(&l) == transvection_word(&r);
    Ok((ok, format!("{} configurations plus the rearranged form", suite.len())))
}

fn cyclic_relation() -> Outcome {
    let p = TruncationParams {
        x: HVector::a(1) + HVector::a(2) + HVector::a(3),
        max_splittings: Some(400),
        ..Default::default()
    };
    let r = cyclic_relation_check(&p, 5)?;
    let ok = r.in_kernel && r.rotations_vanish && r.splittings >= 3 && r.nf_rank == r.nf_images;
    Ok((ok, format!("{} splittings, normal-form images rank {}/{}", r.splittings, r.nf_rank, r.nf_images)))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("type census", census, 10),
        ("dimension and cd bounds", dim_cd, 1),
        ("(3,1) differential injective", d31, 30),
        ("(2,2) differential injective on the ladder", d22, 60),
        ("(1,3) kernel pattern", d13, 30),
        ("relative (1,3) kernel and vanishing (0,4)", tilde, 30),
        ("s-class module", smodule, 1),
        ("pairing values", pairings, 1),
        ("lantern on homology", lantern, 1),
        ("cyclic relation emerges", cyclic_relation, 10),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (ok, detail) = match result {
            Ok((ok, d)) => (ok, d),
            Err(e) => (false, format!("error: {e}")),
        };
        let pass = ok && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {detail} [{:.2?} of {budget}s{}]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            elapsed,
            if in_time { "" } else { ", over budget" }
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
