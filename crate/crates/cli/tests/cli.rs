use magicsq::experiments::{PARAMETRIC_HEADER, REPORT_HEADER, SWEEP_HEADER};
use magicsq_cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn magicsq(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("magicsq").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn simulate_noiseless() {
    let o = magicsq(&["simulate", "--channel", "depolarizing", "--alpha", "0", "--row", "1", "--col", "1"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "1.000000000000\n");
    assert!(o.stderr.is_empty());
}

#[test]
fn simulate_mean_and_spot_value() {
    let o = magicsq(&["simulate", "--channel", "amplitude-damping", "--alpha", "0.75"]);
    assert_eq!(o.stdout, "0.500000000000\n");
    let o = magicsq(&["simulate", "--channel", "amplitude-damping", "--alpha", "0.5", "--row", "2", "--col", "1"]);
    assert_eq!(o.stdout, "0.500000000000\n");
}

#[test]
fn argument_errors_exit_2_with_one_line() {
    let cases: &[&[&str]] = &[
        &["simulate", "--channel", "depolarizing", "--alpha", "1.5", "--row", "1", "--col", "1"],
        &["simulate", "--channel", "dephasing", "--alpha", "0.5"],
        &["simulate", "--channel", "bit-flip", "--alpha", "0.5", "--row", "0", "--col", "1"],
        &["simulate", "--channel", "bit-flip", "--alpha", "0.5", "--row", "2"],
        &["simulate", "--channel", "bit-flip"],
        &["sweep", "--channel", "bit-flip", "--points", "1"],
        &["threshold", "--channel", "phase-flip", "--target", "1.5"],
        &["verify", "--tolerance", "-1"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = magicsq(args);
        assert_eq!(o.code, EXIT_USAGE, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert_eq!(o.stderr.lines().count(), 1, "{args:?}: {:?}", o.stderr);
    }
}

#[test]
fn help_exits_zero() {
    let o = magicsq(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("simulate"));
}

#[test]
fn verify_report() {
    let o = magicsq(&["verify", "--tolerance", "1e-7"]);
    assert_eq!(o.code, EXIT_OK);
    let mut lines = o.stdout.lines();
    assert_eq!(lines.next(), Some(REPORT_HEADER));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 54);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert!(rows[0].starts_with("depolarizing,1,1,"));
    assert!(rows[53].starts_with("bit-phase-flip,3,3,"));
}

#[test]
fn verify_too_strict_reports_failures() {
    let o = magicsq(&["verify", "--tolerance", "1e-20"]);
    assert!(o.code == EXIT_OK || o.code == EXIT_VERIFY_FAILED);
    assert_eq!(o.stdout.lines().count(), 55);
    if o.code == EXIT_VERIFY_FAILED {
        assert!(o.stdout.contains(",false"));
    }
}

#[test]
fn sweep_single_channel_layout() {
    let o = magicsq(&["sweep", "--channel", "phase-flip", "--points", "3"]);
    assert_eq!(o.code, EXIT_OK);
    let lines: Vec<_> = o.stdout.lines().collect();
    assert_eq!(lines[0], SWEEP_HEADER);
    assert_eq!(lines.len(), 4);
    let mid: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(mid[0], "0.500000000000");
    assert_eq!(mid[10], "0.555555555556");
    assert_eq!(mid[11], "0.062500000000");
    assert!(!o.stdout.contains('\r'));
}

#[test]
fn all_channels_in_registry_order() {
    let o = magicsq(&["parametric", "--points", "2"]);
    assert_eq!(o.code, EXIT_OK);
    let lines: Vec<_> = o.stdout.lines().collect();
    assert_eq!(lines[0], format!("channel,{PARAMETRIC_HEADER}"));
    let channels: Vec<&str> = lines[1..].iter().step_by(2).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(
        channels,
        ["depolarizing", "amplitude-damping", "phase-damping", "phase-flip", "bit-flip", "bit-phase-flip"]
    );
}

#[test]
fn parametric_single_channel() {
    let o = magicsq(&["parametric", "--channel", "phase-damping", "--points", "2"]);
    assert_eq!(
        o.stdout,
        format!("{PARAMETRIC_HEADER}\n0.000000000000,1.000000000000,1.000000000000\n1.000000000000,0.062500000000,0.555555555556\n")
    );
}

#[test]
fn fidelity_outputs() {
    let o = magicsq(&["fidelity", "--channel", "phase-flip", "--alpha", "0.5"]);
    assert_eq!(o.stdout, "0.062500000000\n");
    let o = magicsq(&["fidelity", "--channel", "depolarizing", "--points", "2"]);
    assert_eq!(
        o.stdout,
        "alpha,delta1,delta4\n0.000000000000,1.000000000000,1.000000000000\n1.000000000000,0.250000000000,0.003906250000\n"
    );
}

#[test]
fn threshold_outputs() {
    let o = magicsq(&["threshold", "--channel", "phase-damping"]);
    assert_eq!(o.code, EXIT_OK);
    let a: f64 = o.stdout.trim().parse().unwrap();
    assert!((a - (3.0 - 7f64.sqrt()) / 2.0).abs() < 1e-8);
    let o = magicsq(&["threshold", "--channel", "bit-flip", "--target", "0.5"]);
    assert_eq!(o.stdout, "none\n");
    let o = magicsq(&["threshold"]);
    assert_eq!(o.stdout.lines().count(), 7);
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let p = path.to_str().unwrap();
    let args = ["sweep", "--channel", "all", "--points", "11", "--output", p];
    let first = magicsq(&args);
    assert_eq!(first.code, EXIT_OK);
    assert!(first.stdout.is_empty());
    let a = std::fs::read(&path).unwrap();
    assert_eq!(magicsq(&args).code, EXIT_OK);
    let b = std::fs::read(&path).unwrap();
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 1 + 6 * 11);
    let stdout = magicsq(&["sweep", "--channel", "all", "--points", "11", "--output", "-"]);
    assert_eq!(stdout.stdout.as_bytes(), b.as_slice());
}
