use magicsq::channels::ChannelKind;
use magicsq::fidelity::{channel_fidelity, jamiolkowski, product_factorization_check};
use magicsq::linalg::Complex;

fn grid(points: usize) -> Vec<f64> {
    (0..points).map(|k| k as f64 / (points - 1) as f64).collect()
}

/// Independent scalar route: ⟨Ω|J(Φ)|Ω⟩ = Σ_k |tr(E_k)/d|².
fn trace_oracle(kind: ChannelKind, a: f64) -> f64 {
    let kraus = kind.at(a).unwrap().single_qubit_kraus();
    kraus
        .operators()
        .iter()
        .map(|e| (e.trace().unwrap() / Complex::new(2.0, 0.0)).norm_sqr())
        .sum()
}

fn closed_form(kind: ChannelKind, a: f64) -> f64 {
    let s = (1.0 - a).sqrt();
    match kind {
        ChannelKind::PhaseFlip | ChannelKind::BitFlip | ChannelKind::BitPhaseFlip => 1.0 - a,
        ChannelKind::Depolarizing => 1.0 - 0.75 * a,
        // the decay operator is traceless and contributes nothing
        ChannelKind::AmplitudeDamping => ((1.0 + s) / 2.0).powi(2),
        ChannelKind::PhaseDamping => (1.0 + s) / 2.0,
    }
}

#[test]
fn noiseless_fidelity_is_one() {
    for kind in ChannelKind::ALL {
        let spec = kind.at(0.0).unwrap();
        assert!((channel_fidelity(spec, 1).unwrap() - 1.0).abs() <= 1e-12);
        assert!((channel_fidelity(spec, 4).unwrap() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn closed_forms_and_oracle() {
    for kind in ChannelKind::ALL {
        for a in grid(11) {
            let d1 = channel_fidelity(kind.at(a).unwrap(), 1).unwrap();
            assert!((d1 - trace_oracle(kind, a)).abs() <= 1e-10, "{kind} {a}");
            assert!((d1 - closed_form(kind, a)).abs() <= 1e-10, "{kind} {a}");
        }
    }
}

#[test]
fn fidelity_is_non_increasing() {
    for kind in ChannelKind::ALL {
        let one: Vec<f64> = grid(101)
            .iter()
            .map(|&a| channel_fidelity(kind.at(a).unwrap(), 1).unwrap())
            .collect();
        assert!(one.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{kind}");
        let four: Vec<f64> = grid(101)
            .iter()
            .map(|&a| channel_fidelity(kind.at(a).unwrap(), 4).unwrap())
            .collect();
        assert!(four.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{kind}");
    }
}

#[test]
fn factorization_on_grid() {
    for kind in ChannelKind::ALL {
        for a in grid(11) {
            assert!(product_factorization_check(kind.at(a).unwrap()), "{kind} {a}");
        }
    }
}

#[test]
fn choi_states_are_valid() {
    for kind in ChannelKind::ALL {
        for a in grid(11) {
            let choi = jamiolkowski(&kind.at(a).unwrap().single_qubit_kraus()).unwrap();
            choi.matrix().validate().unwrap();
            assert_eq!(choi.source_dim(), 2);
        }
    }
    let big = jamiolkowski(&ChannelKind::AmplitudeDamping.at(0.6).unwrap().four_qubit_kraus())
        .unwrap();
    assert_eq!(big.matrix().dim(), 256);
    big.matrix().validate().unwrap();
}
