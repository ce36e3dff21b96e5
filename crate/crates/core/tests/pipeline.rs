use std::sync::OnceLock;

use num_complex::Complex64;
use proptest::prelude::*;
use rug::Float;

use pjop_core::asym::{outer_asymptotic, Side};
use pjop_core::cdkernel::{kernel, kernel_diagonal, kernel_sum};
use pjop_core::opseq::{eval_monic, eval_monic_complex};
use pjop_core::unikernels::compare_hard_edge;
use pjop_core::{PrecisionConfig, RecurrenceTable, WeightParams};

fn table(alpha: f64, beta: f64, t: f64, n: usize) -> RecurrenceTable {
    let p = WeightParams::new(alpha, beta, t).unwrap();
    RecurrenceTable::compute(&p, n, PrecisionConfig::default()).unwrap().0
}

fn asymmetric() -> &'static (RecurrenceTable, RecurrenceTable) {
    static T: OnceLock<(RecurrenceTable, RecurrenceTable)> = OnceLock::new();
    T.get_or_init(|| (table(0.5, 2.0, 0.02, 20), table(2.0, 0.5, 0.02, 20)))
}

#[test]
fn rct_round_trip_preserves_all_digits() {
    let tab = table(1.5, 0.5, 0.03, 12);
    let back = RecurrenceTable::from_rct(&tab.to_rct()).unwrap();
    assert_eq!(back, tab);
}

#[test]
fn reflection_swaps_exponents() {
    // pi_n(1 - x; a, b) = (-1)^n pi_n(x; b, a)
    let (ab, ba) = asymmetric();
    for n in [1usize, 5, 20] {
        for x in [0.13, 0.5, 0.77] {
            let l = eval_monic(ab, n, 1.0 - x).unwrap().value.to_f64();
            let r = eval_monic(ba, n, x).unwrap().value.to_f64();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((l - sign * r).abs() <= 1e-12 * l.abs().max(1e-30), "n={n} x={x}");
        }
    }
}

#[test]
fn small_t_approaches_jacobi() {
    let jac = table(1.0, 2.0, 0.0, 10);
    let pert = table(1.0, 2.0, 1e-12, 10);
    for n in 0..10 {
        let da = Float::with_val(256, &jac.a[n] - &pert.a[n]).abs().to_f64();
        let db = Float::with_val(256, &jac.b[n] - &pert.b[n]).abs().to_f64();
        assert!(da < 1e-6 && db < 1e-6, "n={n} da={da} db={db}");
    }
}

#[test]
fn complex_evaluation_on_real_axis_matches_real() {
    let (ab, _) = asymmetric();
    let x = 0.37;
    let c = eval_monic_complex(ab, 15, Complex64::new(x, 0.0)).unwrap();
    let r = eval_monic(ab, 15, x).unwrap().value.to_f64();
    assert!((c.re - r).abs() <= 1e-12 * r.abs());
    assert_eq!(c.im, 0.0);
}

#[test]
fn outer_ratio_improves_for_classical_weight() {
    let tab = table(0.5, 1.5, 0.0, 40);
    let z = Complex64::new(1.5, 0.3);
    let err = |n| {
        let e = eval_monic_complex(&tab, n, z).unwrap();
        (e / outer_asymptotic(n, z, &tab.params, 1e-3).unwrap() - 1.0).norm()
    };
    assert!(err(40) < 0.6 * err(20));
}

#[test]
fn hard_edge_mirrors_for_swapped_exponents() {
    let (ab, ba) = asymmetric();
    let grid = [(0.5, 1.0), (2.0, 3.0)];
    let r = compare_hard_edge(ab, 20, Side::Right, &grid).unwrap();
    let l = compare_hard_edge(ba, 20, Side::Left, &grid).unwrap();
    for (a, b) in r.rows.iter().zip(&l.rows) {
        assert!((a.measured - b.measured).abs() <= 1e-10 * a.measured.abs());
        assert_eq!(a.target, b.target);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_forms_agree(x in 0.02f64..0.98, y in 0.02f64..0.98, n in 1usize..=20) {
        let (ab, _) = asymmetric();
        let cd = kernel(ab, n, x, y).unwrap();
        let sum = kernel_sum(ab, n, x, y).unwrap();
        prop_assert!((cd - sum).abs() <= 1e-9 * (1.0 + sum.abs()));
    }

    #[test]
    fn cauchy_schwarz(x in 0.02f64..0.98, y in 0.02f64..0.98, n in 1usize..=20) {
        let (ab, _) = asymmetric();
        let k = kernel(ab, n, x, y).unwrap();
        let bound = (kernel_diagonal(ab, n, x).unwrap() * kernel_diagonal(ab, n, y).unwrap()).sqrt();
        prop_assert!(k.abs() <= bound * (1.0 + 1e-10));
    }
}
