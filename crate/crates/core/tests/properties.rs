mod common;

use common::gen;
use num_bigint::BigInt;
use phv::castling::{
    apply_move, castling_moves, enumerate_orbit, is_reduced, reduce, MoveKind, OrbitLimits,
    SubsetPolicy,
};
use phv::verify::{theorem_b_scan, Verdict};
use phv::{canonical_form, format_module, parse_module, Module, SimpleFactor, Summand};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn canonical_form_is_idempotent(seed in any::<u64>()) {
        let m = gen::module(&mut gen::rng(seed));
        let c = canonical_form(&m);
        prop_assert_eq!(canonical_form(&c), c.clone());
    }

    #[test]
    fn canonical_form_ignores_symmetries(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let m = gen::module(&mut r);
        let s = gen::scramble(&mut r, &m);
        prop_assert_eq!(canonical_form(&m), canonical_form(&s));
        prop_assert_eq!(m.module_dim(), s.module_dim());
        prop_assert_eq!(m.group_dim(), s.group_dim());
    }

    #[test]
    fn format_then_parse_is_identity(seed in any::<u64>()) {
        let m = gen::module(&mut gen::rng(seed));
        let text = format_module(&m);
        let back = parse_module(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, m);
    }

    #[test]
    fn castling_preserves_defect_and_inverts(seed in any::<u64>()) {
        let m = gen::castlable_module(&mut gen::rng(seed));
        for mv in castling_moves(&m, SubsetPolicy::AllSubsets) {
            let out = apply_move(&m, &mv).unwrap();
            let next = &out.module;
            prop_assert_eq!(next.dim_defect(), m.dim_defect());
            prop_assert_eq!(next.is_etale_candidate(), m.is_etale_candidate());
            prop_assert_eq!(
                BigInt::from(next.module_dim()) - BigInt::from(m.module_dim()),
                mv.dim_change()
            );
            let back = castling_moves(next, SubsetPolicy::AllSubsets)
                .into_iter()
                .find(|b| match (out.fresh_factor, &b.kind) {
                    (Some(j), MoveKind::Castle { factor }) => *factor == j,
                    (None, MoveKind::Promote) => b.summands == mv.summands,
                    _ => false,
                });
            let back = back.ok_or_else(|| TestCaseError::fail(format!("no inverse for {mv}")))?;
            prop_assert_eq!(back.m, mv.m);
            let restored = apply_move(next, &back).unwrap().module;
            prop_assert_eq!(canonical_form(&restored), canonical_form(&m), "{}", mv);
        }
    }

    #[test]
    fn reduce_yields_reduced_module(seed in any::<u64>()) {
        let m = gen::castlable_module(&mut gen::rng(seed));
        let r = reduce(&m);
        prop_assert!(is_reduced(&r));
        prop_assert!(r.module_dim() <= m.module_dim());
        prop_assert_eq!(r.dim_defect(), m.dim_defect());
    }
}

/// `SL_a × SL_b × SL_c` acting on `ω_1 ⊗ ω_1 ⊗ ω_1` with one scalar.
fn triple(a: u64, b: u64, c: u64) -> Module {
    let factors: Vec<SimpleFactor> = [a, b, c].iter().map(|&n| SimpleFactor::sl(n).unwrap()).collect();
    let weights = factors
        .iter()
        .map(|f| phv::HighestWeight::fundamental(f.rank(), 1).unwrap())
        .collect();
    Module::new(
        phv::GroupShape::new(1, factors).unwrap(),
        vec![Summand::new(weights, [0])],
    )
    .unwrap()
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn reduce_reaches_orbit_minimum(a in 2u64..=6, b in 2u64..=6, c in 2u64..=12) {
        let m = triple(a, b, c);
        let limits = OrbitLimits::new(4, 1_000_000);
        let orbit = enumerate_orbit(&m, &limits).unwrap();
        let r = reduce(&m);
        prop_assert_eq!(r.module_dim(), orbit.min_dim());
    }
}

#[test]
fn orbit_is_independent_of_thread_count() {
    let seeds = ["GL1 x SL3 x SL5 : w1 # w1", "GL1 x SL2 x SL2 x SL3 : w1 # w1 # w1", "GL1 x Sp2 x SL5 : w1 # w1"];
    let limits = OrbitLimits::new(4, 1_000_000);
    for text in seeds {
        let m = parse_module(text).unwrap();
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| enumerate_orbit(&m, &limits).unwrap())
        };
        assert_eq!(run(1), run(4), "{text}");
    }
}

#[test]
fn orbits_grow_with_limits() {
    let m = parse_module("GL1 x SL2 x SL3 : w1 # w1").unwrap();
    let mut previous = 0;
    for steps in 0..=5 {
        let orbit = enumerate_orbit(&m, &OrbitLimits::new(steps, 1_000_000)).unwrap();
        assert!(orbit.members.len() >= previous);
        previous = orbit.members.len();
        for member in &orbit.members {
            assert!(member.path.len() <= steps);
            assert_eq!(member.module.dim_defect(), m.dim_defect());
        }
    }
}

#[test]
fn theorem_b_scan_is_monotone_in_limits() {
    let small = theorem_b_scan(&OrbitLimits::new(2, 100_000)).unwrap();
    let large = theorem_b_scan(&OrbitLimits::new(4, 1_000_000)).unwrap();
    assert!(large.stats.checked >= small.stats.checked);
    for report in [&small, &large] {
        assert_eq!(report.verdict, Verdict::Pass, "{report}");
        assert!(report.violations.is_empty());
    }
}
