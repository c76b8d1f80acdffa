use magicsq::channels::ChannelKind;
use magicsq::experiments::{
    parametric_dataset, reconstruct_polynomial, sweep, threshold_crossing, verify_against_reference,
    verify_against_table, write_sweep_csv, Polynomial, ReferenceTable,
};
use magicsq::game::{mean_success, success_probability};
use magicsq::{GameInput, CLASSICAL_LIMIT};

#[test]
fn verification_passes_everywhere() {
    let report = verify_against_reference(1e-7).unwrap();
    assert_eq!(report.entries.len(), 54);
    assert_eq!(report.passed(), 54);
}

#[test]
fn tiny_tolerance_still_reports() {
    let report = verify_against_reference(1e-20).unwrap();
    assert_eq!(report.entries.len(), 54);
    assert!(report.entries.iter().all(|e| e.max_coeff_dev.is_finite()));
    assert!(verify_against_reference(0.0).is_err());
}

#[test]
fn corrupted_entry_is_the_only_failure() {
    let mut table = ReferenceTable::published();
    let target = GameInput::new(3, 2).unwrap();
    table.insert(
        ChannelKind::BitFlip,
        target,
        Polynomial::new(vec![1.0, -2.0, 2.5, 0.0, 0.0]).unwrap(),
    );
    let report = verify_against_table(&table, 1e-7).unwrap();
    let failures: Vec<_> = report.failures().collect();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0].channel, ChannelKind::BitFlip);
    assert_eq!(failures[0].input, target);
    assert!((failures[0].max_coeff_dev - 0.5).abs() < 1e-7);
}

#[test]
fn interpolation_self_consistency() {
    let fresh: Vec<f64> = (0..11).map(|k| 0.03 + 0.094 * k as f64).collect();
    for kind in ChannelKind::ALL {
        for input in [GameInput::new(1, 1).unwrap(), GameInput::new(2, 3).unwrap()] {
            let poly = reconstruct_polynomial(kind, input).unwrap();
            for &a in &fresh {
                let direct = success_probability(input, kind.at(a).unwrap()).unwrap();
                assert!((poly.eval(a) - direct).abs() <= 1e-9, "{kind} {input:?} {a}");
            }
        }
    }
}

#[test]
fn amplitude_damping_sweep() {
    let table = sweep(ChannelKind::AmplitudeDamping, 5).unwrap();
    let means: Vec<f64> = table.rows.iter().map(|r| r.mean).collect();
    // (8α² − 12α + 9)/9, summed from the reference rows
    for (row, m) in table.rows.iter().zip(&means) {
        let a = row.alpha;
        assert!((m - (8.0 * a * a - 12.0 * a + 9.0) / 9.0).abs() < 1e-10);
    }
    let min = table.argmin_mean();
    assert_eq!(min.alpha, 0.75);
    assert!((min.mean - 0.5).abs() < 1e-9);
}

#[test]
fn phase_flip_midpoint_and_first_row() {
    let table = sweep(ChannelKind::PhaseFlip, 3).unwrap();
    assert!((table.rows[1].mean - 5.0 / 9.0).abs() < 1e-10);
    for kind in ChannelKind::ALL {
        let t = sweep(kind, 2).unwrap();
        let first = &t.rows[0];
        assert_eq!(first.alpha, 0.0);
        assert!(first.probabilities.iter().flatten().all(|&p| (p - 1.0).abs() < 1e-10));
        assert!((first.delta4 - 1.0).abs() < 1e-12);
    }
    assert!(sweep(ChannelKind::PhaseFlip, 1).is_err());
}

#[test]
fn sweep_invariants_and_determinism() {
    for kind in ChannelKind::ALL {
        let t = sweep(kind, 21).unwrap();
        assert!(t.rows.windows(2).all(|w| w[0].alpha < w[1].alpha));
        for r in &t.rows {
            for v in r.probabilities.iter().flatten().chain([&r.mean, &r.delta4]) {
                assert!((-1e-10..=1.0 + 1e-10).contains(v));
            }
            if r.alpha > 0.0 && r.alpha < 1.0 {
                assert!(r.mean < 1.0 - 1e-12, "{kind} {}", r.alpha);
            }
        }
        let again = sweep(kind, 21).unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_sweep_csv(&mut a, &[t], false).unwrap();
        write_sweep_csv(&mut b, &[again], false).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn flip_mean_columns_coincide() {
    let tables: Vec<_> = ChannelKind::FLIPS.iter().map(|&k| sweep(k, 21).unwrap()).collect();
    for k in 0..21 {
        let m0 = tables[0].rows[k].mean;
        assert!((tables[1].rows[k].mean - m0).abs() <= 1e-10);
        assert!((tables[2].rows[k].mean - m0).abs() <= 1e-10);
    }
}

#[test]
fn phase_damping_threshold() {
    let a = threshold_crossing(ChannelKind::PhaseDamping, CLASSICAL_LIMIT).unwrap().unwrap();
    assert!((a - (3.0 - 7f64.sqrt()) / 2.0).abs() < 1e-8, "{a}");
}

#[test]
fn depolarizing_threshold_self_consistent() {
    let a = threshold_crossing(ChannelKind::Depolarizing, CLASSICAL_LIMIT).unwrap().unwrap();
    let quartic = 0.5 * a.powi(4) - 2.0 * a.powi(3) + 3.0 * a * a - 2.0 * a + 1.0;
    assert!((quartic - CLASSICAL_LIMIT).abs() < 1e-9);
    let mean = mean_success(ChannelKind::Depolarizing.at(a).unwrap()).unwrap();
    assert!((mean - CLASSICAL_LIMIT).abs() < 1e-9);
}

#[test]
fn parametric_examples() {
    let pd = parametric_dataset(ChannelKind::PhaseDamping, 11).unwrap();
    assert_eq!((pd[0].delta4, pd[0].mean), (1.0, 1.0));
    assert!((pd.last().unwrap().delta4 - 1.0 / 16.0).abs() < 1e-10);
    assert!(pd.windows(2).all(|w| w[0].alpha < w[1].alpha));
}
