//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Everything is exact; the only tolerances are the
//! stated runtime bounds, which are asserted.
//!
//! Run with `cargo test --release -p skostka --test acceptance --
//! --nocapture` to see the lines as they complete.

use skostka::combinatorics::{
    lambda_set, multinomial, partition_pairs, rho_shapes, BiComposition, Composition, Label,
    Partition,
};
use skostka::registry::{
    verify_example_6_1, verify_klyachko, verify_labels, verify_lemma_6_1, verify_thm_1_1,
    verify_thm_1_1_at, verify_thm_1_2, verify_thm_1_3, verify_thm_1_4, Session, Thm13Params,
};
use skostka::rep::{
    brauer_quotient_dim, decompose, end_algebra, hom_space, hom_space_direct, is_isomorphic,
    signed_young_rep, IsoOutcome, Summand,
};
use skostka::report::ReportDocument;
use skostka::sylow::{sylow_generators, Perm};
use skostka::tabloids::{fixed_tabloids, rho_type, Tabloid};
use skostka::Caps;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::sync::Arc;
use std::time::{Duration, Instant};

const SEED: u64 = 20240811;

fn comp(v: &[u32]) -> Composition {
    Composition::new(v.to_vec())
}

fn part(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn shape(a: &[u32], b: &[u32]) -> BiComposition {
    BiComposition::new(comp(a), comp(b))
}

fn label(l: &[u32], m: &[u32]) -> Label {
    Label::new(part(l), part(m))
}

fn session(p: u64) -> Session {
    Session::new(p, Caps::default(), SEED).unwrap()
}

fn conclude(name: &str, t0: Instant, limit: Option<Duration>, ok: bool, detail: String) {
    let elapsed = t0.elapsed();
    println!(
        "{}: {} in {:.1}s{}",
        name,
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        if detail.is_empty() {
            String::new()
        } else {
            format!(" ({})", detail)
        }
    );
    assert!(ok, "{} failed: {}", name, detail);
    if let Some(limit) = limit {
        assert!(
            elapsed < limit,
            "{} exceeded the runtime bound: {:.1}s",
            name,
            elapsed.as_secs_f64()
        );
    }
}

fn report_summary(r: &ReportDocument) -> String {
    let failed: Vec<String> = r
        .items
        .iter()
        .filter(|i| i.outcome != skostka::report::Outcome::Pass)
        .map(|i| format!("{}: {:?}", i.name, i.witness))
        .collect();
    if failed.is_empty() {
        format!("{} checks", r.items.len())
    } else {
        failed.join("; ")
    }
}

/// Criterion 1: the fixed-tabloid bases of the worked example, within a
/// second.
#[test]
fn criterion_01_fixed_tabloid_bases() {
    let t0 = Instant::now();
    let q2 = vec![
        Perm::from_cycles(9, &[&[4, 5, 6]]).unwrap(),
        Perm::from_cycles(9, &[&[7, 8, 9]]).unwrap(),
    ];
    let sh = shape(&[2, 1], &[6]);
    let fixed = fixed_tabloids(&sh, &q2, 1 << 20).unwrap();
    let tab = |a: &[&[u32]], b: &[&[u32]]| {
        Tabloid::from_rows(
            a.iter().map(|r| r.to_vec()).collect(),
            b.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    };
    let expected = vec![
        tab(&[&[1, 2], &[3]], &[&[4, 5, 6, 7, 8, 9]]),
        tab(&[&[1, 3], &[2]], &[&[4, 5, 6, 7, 8, 9]]),
        tab(&[&[2, 3], &[1]], &[&[4, 5, 6, 7, 8, 9]]),
    ];
    let q1 = vec![
        Perm::from_cycles(9, &[&[1, 2, 3]]).unwrap(),
        Perm::from_cycles(9, &[&[4, 5, 6]]).unwrap(),
        Perm::from_cycles(9, &[&[7, 8, 9]]).unwrap(),
    ];
    let none = fixed_tabloids(&sh, &q1, 1 << 20).unwrap();
    let ok = fixed == expected && none.is_empty();
    conclude(
        "criterion 1 (fixed tabloid bases)",
        t0,
        Some(Duration::from_secs(1)),
        ok,
        format!("{} and {} fixed tabloids", fixed.len(), none.len()),
    );
}

/// Criterion 2: the indecomposability classification for all shapes of
/// degree at most 6, the two degree-6 hooks, and the one-row pairs up to
/// degree 9, with End dimensions.
#[test]
fn criterion_02_indecomposability_classification() {
    let t0 = Instant::now();
    let mut s = session(3);
    let mut extra = vec![shape(&[5, 1], &[]), shape(&[], &[5, 1])];
    for total in [3u32, 6, 9] {
        for m in 0..=total {
            let a = if m == 0 { vec![] } else { vec![m] };
            let b = if total == m { vec![] } else { vec![total - m] };
            extra.push(shape(&a, &b));
        }
    }
    let report = verify_thm_1_4(&mut s, 6, &extra).unwrap();
    conclude(
        "criterion 2 (indecomposable classification, End dims)",
        t0,
        Some(Duration::from_secs(600)),
        report.all_passed(),
        report_summary(&report),
    );
}

/// Criterion 3: dominance, diagonal multiplicity one, and vertex shapes,
/// exhaustively to degree 5 with spot checks at degree 6.
#[test]
fn criterion_03_dominance_diagonal_vertices() {
    let t0 = Instant::now();
    let mut s = session(3);
    let mut ok = true;
    let mut detail = String::new();
    for n in 0..=5u32 {
        let report = verify_thm_1_1(&mut s, n).unwrap();
        if !report.all_passed() {
            ok = false;
            detail = report_summary(&report);
            break;
        }
    }
    if ok {
        let mut report = ReportDocument::new("spot", serde_json::json!({}), SEED);
        for sh in [
            shape(&[4, 2], &[]),
            shape(&[3, 3], &[]),
            shape(&[4], &[2]),
            shape(&[], &[4, 2]),
            shape(&[2, 1], &[3]),
        ] {
            verify_thm_1_1_at(&mut s, &sh, &mut report).unwrap();
        }
        if !report.all_passed() {
            ok = false;
            detail = report_summary(&report);
        }
    }
    conclude(
        "criterion 3 (dominance / diagonal / vertex suite)",
        t0,
        Some(Duration::from_secs(900)),
        ok,
        detail,
    );
}

/// Criterion 4: labels of the indecomposable one-row pairs up to degree 9.
/// Two of the reference modules have dimension 2520, so this runs with a
/// raised cap.
#[test]
fn criterion_04_labels_to_degree_9() {
    let t0 = Instant::now();
    let mut caps = Caps::default();
    caps.rep_dim = 3000;
    let mut s = Session::new(3, caps, SEED).unwrap();
    let report = verify_labels(&mut s, 9).unwrap();
    conclude(
        "criterion 4 (labels of indecomposables to degree 9)",
        t0,
        None,
        report.all_passed(),
        report_summary(&report),
    );
}

/// Criterion 5: the strict-inequality instance at (m, c) = (1, 1).
#[test]
fn criterion_05_strict_inequality_instance() {
    let t0 = Instant::now();
    let mut s = session(3);
    let report = verify_example_6_1(&mut s, 1, 1).unwrap();
    conclude(
        "criterion 5 (strict inequality at (1,1))",
        t0,
        Some(Duration::from_secs(300)),
        report.all_passed(),
        report_summary(&report),
    );
}

/// Criterion 6: the scaling inequality and its equality criteria for all
/// shapes and labels of degree 2 (scaled modules live in degree 6).
#[test]
fn criterion_06_scaling_inequality() {
    let t0 = Instant::now();
    let mut s = session(3);
    let report = verify_thm_1_2(&mut s, 2).unwrap();
    conclude(
        "criterion 6 (scaling inequality, degree 2)",
        t0,
        None,
        report.all_passed(),
        report_summary(&report),
    );
}

/// Criterion 7: the recursion agrees with explicit decomposition on every
/// pair up to degree 5, including the two classical instances.
#[test]
fn criterion_07_recursion_equals_decomposition() {
    let t0 = Instant::now();
    let mut s = session(3);
    let mut ok = true;
    let mut detail = String::new();
    for n in 0..=5u32 {
        let report = verify_klyachko(&mut s, n).unwrap();
        if !report.all_passed() {
            ok = false;
            detail = report_summary(&report);
            break;
        }
    }
    if ok {
        let a = s
            .klyachko_kostka(&shape(&[3, 1], &[]), &label(&[4], &[]))
            .unwrap();
        let b = s
            .klyachko_kostka(&shape(&[2, 2], &[]), &label(&[4], &[]))
            .unwrap();
        if (a, b) != (1, 0) {
            ok = false;
            detail = format!("classical instances gave ({}, {})", a, b);
        }
    }
    conclude(
        "criterion 7 (recursion = decomposition to degree 5)",
        t0,
        None,
        ok,
        detail,
    );
}

/// Criterion 8: the hyperoctahedral multiplicity identities to degree 3.
#[test]
fn criterion_08_hyperoctahedral_identities() {
    let t0 = Instant::now();
    let mut s = session(3);
    let report = verify_lemma_6_1(&mut s, 3).unwrap();
    conclude(
        "criterion 8 (V2 multiplicity identities)",
        t0,
        None,
        report.all_passed(),
        report_summary(&report),
    );
}

/// Criterion 9: the degree-splitting instance with equality, plus an
/// inequality-direction run with a two-row pi.
#[test]
fn criterion_09_degree_splitting() {
    let t0 = Instant::now();
    let mut s = session(3);
    let p1 = Thm13Params {
        pi: comp(&[1]),
        pi_tilde: Composition::empty(),
        lambda: part(&[1]),
        mu: Partition::empty(),
        phi: comp(&[1]),
        phi_tilde: Composition::empty(),
        alpha: part(&[1]),
        beta: Partition::empty(),
        k: 1,
    };
    let r1 = verify_thm_1_3(&mut s, &p1).unwrap();
    let p2 = Thm13Params {
        pi: comp(&[1, 1]),
        pi_tilde: Composition::empty(),
        lambda: part(&[1, 1]),
        mu: Partition::empty(),
        phi: comp(&[1]),
        phi_tilde: Composition::empty(),
        alpha: part(&[1]),
        beta: Partition::empty(),
        k: 1,
    };
    let r2 = verify_thm_1_3(&mut s, &p2).unwrap();
    let ok = r1.all_passed() && r2.all_passed();
    conclude(
        "criterion 9 (degree splitting instances)",
        t0,
        None,
        ok,
        format!("{}; {}", report_summary(&r1), report_summary(&r2)),
    );
}

/// Criterion 10a: Brauer additivity over the summands of 50 random
/// modules.
#[test]
fn criterion_10a_brauer_additivity() {
    let t0 = Instant::now();
    let caps = Caps::default();
    let mut rng = StdRng::seed_from_u64(SEED ^ 0xadd);
    let mut ok = true;
    let mut detail = String::new();
    let mut done = 0;
    'outer: while done < 50 {
        let n = rng.gen_range(1..=6u32);
        let shapes = partition_pairs(n);
        let sh = shapes[rng.gen_range(0..shapes.len())].clone();
        let rhos = rho_shapes(n, 3);
        let rho = rhos[rng.gen_range(0..rhos.len())].clone();
        let rep = Arc::new(signed_young_rep(&sh, 3, &caps).unwrap());
        let parts = decompose(&rep, &caps, SEED).unwrap();
        let ps = sylow_generators(&rho);
        let whole = Summand::whole(rep.clone());
        let total = brauer_quotient_dim(&whole, &ps).unwrap();
        let sum: usize = parts
            .iter()
            .map(|u| brauer_quotient_dim(u, &ps).unwrap())
            .sum();
        let fixed = fixed_tabloids(&sh, &ps.gens, 1 << 20).unwrap().len();
        if sum != total || total != fixed {
            ok = false;
            detail = format!(
                "M{} at {}: summand sum {}, module {}, fixed count {}",
                sh, rho, sum, total, fixed
            );
            break 'outer;
        }
        done += 1;
    }
    conclude(
        "criterion 10a (Brauer additivity, 50 random cases)",
        t0,
        None,
        ok,
        detail,
    );
}

/// Criterion 10b: Krull-Schmidt stability across seeds, exhaustively to
/// degree 5 with spot checks at degree 6.
#[test]
fn criterion_10b_seed_stability() {
    let t0 = Instant::now();
    let caps = Caps::default();
    let mut ok = true;
    let mut detail = String::new();
    let mut cases: Vec<BiComposition> = Vec::new();
    for n in 0..=5u32 {
        cases.extend(partition_pairs(n));
    }
    cases.extend([
        shape(&[3, 3], &[]),
        shape(&[2, 2], &[2]),
        shape(&[1, 1], &[4]),
        shape(&[2, 1], &[3]),
        shape(&[], &[4, 2]),
    ]);
    'outer: for sh in cases {
        {
            let rep = Arc::new(signed_young_rep(&sh, 3, &caps).unwrap());
            let d1 = decompose(&rep, &caps, 101).unwrap();
            let d2 = decompose(&rep, &caps, 999).unwrap();
            if d1.len() != d2.len() {
                ok = false;
                detail = format!("M{}: {} vs {} summands", sh, d1.len(), d2.len());
                break 'outer;
            }
            let mut used = vec![false; d2.len()];
            for u in &d1 {
                let mut found = false;
                for (j, v) in d2.iter().enumerate() {
                    if !used[j]
                        && is_isomorphic(u, v, &caps, SEED).unwrap() == IsoOutcome::Yes
                    {
                        used[j] = true;
                        found = true;
                        break;
                    }
                }
                if !found {
                    ok = false;
                    detail = format!("M{}: summand multisets differ between seeds", sh);
                    break 'outer;
                }
            }
        }
    }
    conclude(
        "criterion 10b (Krull-Schmidt seed stability, degree 5 + spots)",
        t0,
        None,
        ok,
        detail,
    );
}

/// Criterion 10c: hom dimensions through the eigenspace route equal the
/// direct intertwiner solve on all small shapes.
#[test]
fn criterion_10c_reciprocity_agreement() {
    let t0 = Instant::now();
    let caps = Caps::default();
    let mut ok = true;
    let mut detail = String::new();
    let mut small: Vec<BiComposition> = Vec::new();
    for n in 0..=5u32 {
        for sh in partition_pairs(n) {
            let sizes: Vec<u32> = sh
                .alpha
                .parts()
                .iter()
                .chain(sh.beta.parts().iter())
                .copied()
                .collect();
            if multinomial(n, &sizes).unwrap() <= 30 {
                small.push(sh);
            }
        }
    }
    'outer: for a in &small {
        for b in &small {
            if a.size() != b.size() {
                continue;
            }
            let ra = Summand::whole(Arc::new(signed_young_rep(a, 3, &caps).unwrap()));
            let rb = Summand::whole(Arc::new(signed_young_rep(b, 3, &caps).unwrap()));
            let eig = hom_space(&ra, &rb).unwrap().dim();
            let dir = hom_space_direct(&ra, &rb).unwrap().dim();
            if eig != dir {
                ok = false;
                detail = format!("Hom(M{}, M{}): eigenspace {} vs solve {}", a, b, eig, dir);
                break 'outer;
            }
        }
    }
    conclude(
        "criterion 10c (reciprocity hom agreement)",
        t0,
        None,
        ok,
        detail,
    );
}

/// Criterion 10d: fixed tabloids grouped by rho-type match the product
/// block sizes for 50 random cases up to degree 12.
#[test]
fn criterion_10d_block_size_counting() {
    let t0 = Instant::now();
    let mut rng = StdRng::seed_from_u64(SEED ^ 0xb10c);
    let mut ok = true;
    let mut detail = String::new();
    let mut done = 0;
    'outer: while done < 50 {
        let n = rng.gen_range(1..=12u32);
        let shapes = partition_pairs(n);
        let sh = shapes[rng.gen_range(0..shapes.len())].clone();
        let sizes: Vec<u32> = sh
            .alpha
            .parts()
            .iter()
            .chain(sh.beta.parts().iter())
            .copied()
            .collect();
        if multinomial(n, &sizes).unwrap() > 1 << 19 {
            continue;
        }
        let rhos = rho_shapes(n, 3);
        let rho = rhos[rng.gen_range(0..rhos.len())].clone();
        let ps = sylow_generators(&rho);
        let fixed = fixed_tabloids(&sh, &ps.gens, 1 << 20).unwrap();
        let mut by_type: std::collections::HashMap<_, u64> = std::collections::HashMap::new();
        for t in &fixed {
            *by_type.entry(rho_type(t, &rho).unwrap()).or_insert(0) += 1;
        }
        let ls = lambda_set(&sh, &rho).unwrap();
        let mut total = 0u64;
        for e in &ls.entries {
            let mut block = 1u64;
            for i in 0..rho.levels().max(1) {
                let gd: Vec<u32> = e
                    .gamma(i)
                    .parts()
                    .iter()
                    .chain(e.delta(i).parts().iter())
                    .copied()
                    .collect();
                block *= multinomial(rho.mult(i), &gd).unwrap();
            }
            if block != by_type.get(e).copied().unwrap_or(0) {
                ok = false;
                detail = format!("block size mismatch at M{}, {}", sh, rho);
                break 'outer;
            }
            total += block;
        }
        if total != fixed.len() as u64 {
            ok = false;
            detail = format!("totals differ at M{}, {}", sh, rho);
            break 'outer;
        }
        done += 1;
    }
    conclude(
        "criterion 10d (rho-type block sizes, 50 random cases)",
        t0,
        None,
        ok,
        detail,
    );
}

/// Criterion 11: characteristic five smoke: the two classified
/// indecomposables and a full registry to degree 4.
#[test]
fn criterion_11_p5_smoke() {
    let t0 = Instant::now();
    let mut s = session(5);
    let mut ok = true;
    let mut detail = String::new();
    // M((4,1)|-) indecomposable with End of dimension 2 (hook case at p=5)
    let parts = s.decompose_shape(&shape(&[4, 1], &[])).unwrap();
    if parts.len() != 1 || end_algebra(&parts[0]).unwrap().dim != 2 {
        ok = false;
        detail = format!(
            "M((4,1)|()) at p=5: {} summands, End dim {}",
            parts.len(),
            end_algebra(&parts[0]).unwrap().dim
        );
    }
    // M((2)|(3)) indecomposable (5 divides 2+3)
    if ok {
        let parts = s.decompose_shape(&shape(&[2], &[3])).unwrap();
        if parts.len() != 1 {
            ok = false;
            detail = format!("M((2)|(3)) at p=5: {} summands", parts.len());
        }
    }
    // registry build for degrees up to 4 (semisimple range at p=5)
    if ok {
        for n in 0..=4u32 {
            let entries = s.build_registry(n).unwrap();
            let expected = skostka::combinatorics::labels(n, 5).unwrap().len();
            if entries.len() != expected {
                ok = false;
                detail = format!("registry at degree {}: {} entries", n, entries.len());
                break;
            }
        }
    }
    conclude("criterion 11 (p = 5 smoke)", t0, None, ok, detail);
}
