//! Acceptance suite: one test per criterion, each printing a PASS/SKIP line
//! (run with `--nocapture` to see them). Every tolerance is exact integer
//! equality; the randomized criteria run at least 10,000 trials each from
//! fixed seeds.

mod common;

use std::path::PathBuf;

use common::random_diagram;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vknot_core::bounds::{
    complete_upper_bound, generic_upper_bound, global_upper_bound, ow_lower_bound, owp_lower_bound,
    torus2_minimal_diagram_bound, torus2_upper_bound,
};
use vknot_core::census::{load_census, verify_table3, CensusEntry};
use vknot_core::diagram::GaussDiagram;
use vknot_core::families::{torus2_minimal, trefoil_ring, virtual_twist_knot};
use vknot_core::invariants::{arc_labels, chord_index, odd_writhe, odd_writhe_polynomial};
use vknot_core::moves::{apply_move, apply_sequence, enumerate_moves, MoveKind, MoveSequence};
use vknot_core::poly::LaurentPoly;
use vknot_core::search::{certify_forbidden_number, unknotting_search, SearchConfig, SearchStatus};

fn census_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/census.tsv")
}

fn census_entry(name: &str) -> Option<CensusEntry> {
    let path = census_path();
    if !path.exists() {
        return None;
    }
    load_census(&path)
        .expect("census fixture loads")
        .into_iter()
        .find(|e| e.name == name)
}

fn search_cfg(budget: u32) -> SearchConfig {
    SearchConfig {
        max_forbidden: budget,
        ..SearchConfig::default()
    }
}

#[test]
fn criterion_01_bound_tables() {
    // printed complete-knot table, rows h = 1..10, columns c = h..10; the
    // (c=10, h=6) cell is pinned to the formula value 49 (the printed 39 is
    // a typo: 10*9/2 + floor(16/4) = 49)
    let printed: [&[u64]; 10] = [
        &[0, 1, 4, 8, 14, 21, 30, 40, 52, 65],
        &[1, 3, 7, 12, 19, 27, 37, 48, 61],
        &[3, 6, 11, 17, 25, 34, 45, 57],
        &[6, 10, 16, 23, 32, 42, 54],
        &[10, 15, 22, 30, 40, 51],
        &[15, 21, 29, 38, 49],
        &[21, 28, 37, 47],
        &[28, 36, 46],
        &[36, 45],
        &[45],
    ];
    for (h0, row) in printed.iter().enumerate() {
        let h = (h0 + 1) as u64;
        for (i, &want) in row.iter().enumerate() {
            let c = h + i as u64;
            assert_eq!(complete_upper_bound(c, h).unwrap(), want, "(c={c}, h={h})");
        }
    }
    for c in 1..=10u64 {
        assert_eq!(generic_upper_bound(c), complete_upper_bound(c, 1).unwrap());
    }
    let global_row = [1, 4, 7, 13, 19, 28, 37, 49, 61, 76, 91];
    for (i, &want) in global_row.iter().enumerate() {
        let c = i as u64 + 2;
        assert_eq!(global_upper_bound(c), want, "c = {c}");
    }
    println!("criterion  1: PASS - bound tables reproduced exactly (10,6 pinned to 49)");
}

#[test]
fn criterion_02_torus_bounds() {
    assert_eq!(torus2_upper_bound(5).unwrap(), 12);
    assert_eq!(torus2_minimal_diagram_bound(11).unwrap(), 70);
    assert_eq!(torus2_minimal_diagram_bound(5).unwrap(), 13);
    println!("criterion  2: PASS - torus bounds 12 / 70 / 13 exact");
}

#[test]
fn criterion_03_knot_447_worked_example() {
    let Some(entry) = census_entry("4.47") else {
        println!("criterion  3: SKIP - census fixture absent (warning)");
        return;
    };
    let d = &entry.diagram;
    let w = odd_writhe_polynomial(d);
    assert_eq!(w, LaurentPoly::from_terms([(4, 1), (2, -2), (0, 1)]));
    assert_eq!(w.to_string(), "t^4 - 2t^2 + 1");
    let labels = arc_labels(d);
    let indices: Vec<i64> = (1..=4)
        .map(|c| chord_index(d, &labels, c).unwrap())
        .collect();
    assert_eq!(indices, vec![2, 4, 0, 2]);
    assert_eq!(owp_lower_bound(d), 2);
    let seq: MoveSequence = "FU(4,2), R1(4), FU(3,2), R1(3), R2(1,2)".parse().unwrap();
    let (final_diagram, cost) = apply_sequence(d, &seq).unwrap();
    assert!(final_diagram.is_empty());
    assert_eq!(cost, 2);
    let report = certify_forbidden_number(d, &SearchConfig::default());
    assert_eq!(report.exact, Some(2));
    println!("criterion  3: PASS - 4.47: W = t^4 - 2t^2 + 1, N = (2,4,0,2), F = 2 certified");
}

#[test]
fn criterion_04_virtual_trefoil_end_to_end() {
    let t = GaussDiagram::parse("O1+O2+U1+U2+").unwrap();
    assert_eq!(odd_writhe(&t), 2);
    let w = odd_writhe_polynomial(&t);
    assert_eq!(w, LaurentPoly::from_terms([(2, 1), (0, 1)]));
    assert_eq!(w.evaluate_at_one(), odd_writhe(&t));
    assert_eq!(ow_lower_bound(&t), 1);
    let outcome = unknotting_search(&t, &search_cfg(1));
    let SearchStatus::Unknotted(seq) = &outcome.status else {
        panic!("search failed: {:?}", outcome.status);
    };
    let (final_diagram, cost) = apply_sequence(&t, seq).unwrap();
    assert!(final_diagram.is_empty());
    assert_eq!(cost, 1);
    let report = certify_forbidden_number(&t, &SearchConfig::default());
    assert_eq!(report.exact, Some(1));
    println!("criterion  4: PASS - virtual trefoil: w_o = 2, W = t^2 + 1, F = 1 certified");
}

#[test]
fn criterion_05_trefoil_rings() {
    for n in 1..=3u32 {
        let ring = trefoil_ring(n as u64).unwrap();
        assert_eq!(odd_writhe(&ring), 2 * i64::from(n), "n = {n}");
        let found = unknotting_search(&ring, &search_cfg(n));
        let SearchStatus::Unknotted(seq) = &found.status else {
            panic!("ring {n}: no certificate at budget {n}");
        };
        assert_eq!(seq.forbidden_cost(), n, "n = {n}");
        let (final_diagram, cost) = apply_sequence(&ring, seq).unwrap();
        assert!(final_diagram.is_empty() && cost == n);
        if n > 0 {
            let starved = unknotting_search(&ring, &search_cfg(n - 1));
            assert_eq!(starved.status, SearchStatus::ExhaustedBudget, "n = {n}");
        }
        let report = certify_forbidden_number(&ring, &SearchConfig::default());
        assert_eq!(report.exact, Some(u64::from(n)), "n = {n}");
    }
    println!("criterion  5: PASS - trefoil rings n = 1..3: F = n certified, budget n-1 exhausts");
}

#[test]
fn criterion_06_forbidden_move_delta_theorems() {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let mut trials = 0u32;
    while trials < 10_000 {
        let d = random_diagram(&mut rng, 8);
        let moves = enumerate_moves(&d, &[MoveKind::Fo, MoveKind::Fu]);
        let Some(m) = moves.choose(&mut rng) else {
            continue;
        };
        let out = apply_move(&d, m).unwrap();
        let dw = (odd_writhe(&out) - odd_writhe(&d)).abs();
        assert!(dw == 0 || dw == 2, "{m} on {d}: |delta w_o| = {dw}");
        let delta = &odd_writhe_polynomial(&d) - &odd_writhe_polynomial(&out);
        assert!(
            delta.support().len() <= 2,
            "{m} on {d}: delta {delta} touches > 2 exponents"
        );
        let mass = delta.abs_coeff_sum();
        assert!(mass == 0 || mass == 2, "{m} on {d}: delta mass {mass}");
        trials += 1;
    }
    println!("criterion  6: PASS - 10000 forbidden-move trials: delta w_o in {{0,2}}, delta W = +-t^m +- t^n");
}

#[test]
fn criterion_07_reidemeister_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    let kinds = [
        MoveKind::R1Remove,
        MoveKind::R2Remove,
        MoveKind::R3,
        MoveKind::R1Add,
        MoveKind::R2Add,
    ];
    let mut trials = 0u32;
    while trials < 10_000 {
        let d = random_diagram(&mut rng, 8);
        // choose among the kinds that actually apply so removals and R3 get
        // real coverage alongside the always-applicable additions
        let present: Vec<MoveKind> = kinds
            .iter()
            .copied()
            .filter(|&k| !enumerate_moves(&d, &[k]).is_empty())
            .collect();
        let Some(&kind) = present.choose(&mut rng) else {
            continue;
        };
        let moves = enumerate_moves(&d, &[kind]);
        let m = moves.choose(&mut rng).unwrap();
        let out = apply_move(&d, m).unwrap();
        assert_eq!(odd_writhe(&out), odd_writhe(&d), "{m} on {d}");
        assert_eq!(
            odd_writhe_polynomial(&out),
            odd_writhe_polynomial(&d),
            "{m} on {d}"
        );
        trials += 1;
    }
    println!("criterion  7: PASS - 10000 R1/R2/R3 trials leave w_o and W unchanged");
}

#[test]
fn criterion_08_mirror_inverse_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    for _ in 0..10_000 {
        let d = random_diagram(&mut rng, 8);
        assert_eq!(odd_writhe(&d.mirror()), -odd_writhe(&d), "{d}");
        assert_eq!(odd_writhe(&d.inverse()), odd_writhe(&d), "{d}");
    }
    println!("criterion  8: PASS - 10000 diagrams: w_o(mirror) = -w_o, w_o(inverse) = w_o");
}

#[test]
fn criterion_09_builtin_sequence_verification() {
    let path = census_path();
    if !path.exists() {
        println!("criterion  9: SKIP - census fixture absent (warning)");
        return;
    }
    let entries = load_census(&path).expect("census fixture loads");
    let report = verify_table3(&entries);
    assert!(report.missing.is_empty(), "missing: {:?}", report.missing);
    let expected = [
        ("4.26", 2),
        ("4.41", 1),
        ("4.55", 1),
        ("4.56", 1),
        ("4.58", 1),
        ("4.59", 1),
        ("4.76", 1),
        ("4.77", 1),
    ];
    assert_eq!(report.verdicts.len(), expected.len());
    for ((name, cost), verdict) in expected.iter().zip(&report.verdicts) {
        assert_eq!(verdict.name, *name);
        assert!(verdict.valid, "{name} sequence must reach the unknot");
        assert_eq!(verdict.forbidden_cost, *cost, "{name}");
        assert_eq!(verdict.expected_cost, *cost, "{name}");
    }
    assert!(report.all_valid());
    println!("criterion  9: PASS - all eight built-in sequences unknot with the published costs");
}

#[test]
fn criterion_10_family_oracles() {
    for p in (3..=15u64).step_by(2) {
        let t = torus2_minimal(p).unwrap();
        assert!(odd_writhe_polynomial(&t).is_zero(), "p = {p}");
        assert_eq!(t.longest_head_run(), 1, "p = {p}");
    }
    for n in 1..=12u64 {
        let v = virtual_twist_knot(n).unwrap();
        let want = if n % 2 == 1 { n + 1 } else { n } as i64;
        assert_eq!(odd_writhe(&v), want, "n = {n}");
    }
    println!(
        "criterion 10: PASS - torus minimal diagrams have W = 0, h = 1; VT_n odd writhe matches"
    );
}
