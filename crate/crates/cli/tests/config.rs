use fracrd_cli::config::{InitialSpec, Method, Model};
use fracrd_cli::{echo, parse_config, ConfigError, RunConfig};
use fracrd_core::spatial::KernelShape;
use proptest::prelude::*;

const MINIMAL: &str = "alpha = 0.5\ns = 0.5\np = 2\n";

fn line_of(err: ConfigError) -> usize {
    match err {
        ConfigError::Line { line, .. } => line,
        other => panic!("expected a line error, got {other}"),
    }
}

#[test]
fn minimal_config_fills_defaults() {
    let c = parse_config(MINIMAL).unwrap();
    assert_eq!(c.model, Model::Competition);
    assert_eq!(c.method, Method::L1Explicit);
    assert_eq!((c.params.alpha, c.params.op.s, c.params.op.p), (0.5, 0.5, 2.0));
    assert_eq!((c.params.mu, c.params.k, c.params.gamma, c.params.m), (1.0, 1.0, 1.0, 1.0));
    assert_eq!((c.params.dt, c.params.t_end), (1e-3, 1.0));
    assert_eq!((c.dim, c.half_width, c.nodes), (1, 8.0, 65));
    assert_eq!(c.kernel.shape, KernelShape::Gaussian { width: 1.0 });
    assert_eq!(c.initial, InitialSpec::GaussianBump { amplitude: 0.1, width: 1.0, center: [0.0, 0.0] });
    assert_eq!(c.seed, 0);
    assert!(c.sweep_axis.is_none());

    let text = echo(&c);
    for line in ["model = competition", "alpha = 0.5", "gamma = 1.0", "nodes = 65", "history_window = none", "initial = gaussian_bump"] {
        assert!(text.lines().any(|l| l == line), "echo lacks '{line}':\n{text}");
    }
}

#[test]
fn gamma_below_one_rejected_with_line() {
    let err = parse_config("alpha = 0.5\ns = 0.5\np = 2\n# comment\ngamma = 0.5\n").unwrap_err();
    assert!(err.to_string().contains("gamma"), "{err}");
    assert_eq!(line_of(err), 5);
}

#[test]
fn porous_p_outside_box_rejected() {
    let text = "model = porous\nalpha = 0.6\ns = 0.5\np = 1.5\nm = 2.5\n";
    let err = parse_config(text).unwrap_err();
    assert!(err.to_string().contains("4/3") || err.to_string().contains("1.33"), "{err}");
    assert_eq!(line_of(err), 4);
    // Inside the box it parses.
    assert!(parse_config("model = porous\nalpha = 0.6\ns = 0.7\np = 1.25\nm = 2.5\n").is_ok());
}

#[test]
fn zero_competition_is_the_blowup_setting() {
    assert!(parse_config(&format!("{MINIMAL}k = 0\n")).is_ok());
    assert_eq!(line_of(parse_config(&format!("{MINIMAL}k = -1\n")).unwrap_err()), 4);
}

#[test]
fn line_numbers_for_parse_errors() {
    assert_eq!(line_of(parse_config("alpha = 0.5\n\nbogus = 1\ns = 0.5\np = 2\n").unwrap_err()), 3);
    assert_eq!(line_of(parse_config("alpha = 0.5\ns = half\np = 2\n").unwrap_err()), 2);
    assert_eq!(line_of(parse_config("alpha = 0.5\ns = 0.5\np = 2\nalpha = 0.6\n").unwrap_err()), 4);
    assert_eq!(line_of(parse_config("alpha = 0.5\ns 0.5\np = 2\n").unwrap_err()), 2);
    assert_eq!(line_of(parse_config(&format!("{MINIMAL}nodes = -3\n")).unwrap_err()), 4);
}

#[test]
fn missing_required_key() {
    let err = parse_config("alpha = 0.5\ns = 0.5\n").unwrap_err();
    assert!(matches!(err, ConfigError::Invalid(ref m) if m.contains("'p'")), "{err}");
}

#[test]
fn presets_and_files() {
    let c = parse_config(&format!("{MINIMAL}initial = scaled_eigen\neigen_factor = 3\n")).unwrap();
    assert_eq!(c.initial, InitialSpec::ScaledEigen { factor: 3.0 });
    let c = parse_config(&format!("{MINIMAL}initial = constant\namplitude = 0.2\n")).unwrap();
    assert_eq!(c.initial, InitialSpec::Constant { value: 0.2 });
    assert!(parse_config(&format!("{MINIMAL}initial = file\ninitial_file = /no/such/file.csv\n")).is_err());
    assert!(parse_config(&format!("{MINIMAL}initial = sawtooth\n")).is_err());
    assert!(parse_config(&format!("{MINIMAL}kernel_shape = box\nkernel_size = 1.5\n")).is_ok());
    assert!(parse_config(&format!("{MINIMAL}sweep_axis = nodes\nsweep_values = 33,65\n")).is_err());
    assert!(parse_config(&format!("{MINIMAL}method = spectral-duhamel\np = 1.5\n")).is_err());
}

#[test]
fn with_value_revalidates() {
    let c = parse_config(MINIMAL).unwrap();
    assert_eq!(c.with_value("alpha", 0.8).unwrap().params.alpha, 0.8);
    assert!(c.with_value("gamma", 0.5).is_err());
    assert!(c.with_value("nodes", 33.0).is_err());
}

fn roundtrip(c: &RunConfig) {
    let back = parse_config(&echo(c)).unwrap();
    assert_eq!(&back, c);
    assert_eq!(echo(&back), echo(c));
}

#[test]
fn echo_roundtrip_examples() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("u0.csv");
    std::fs::write(&file, "x,value\n").unwrap();
    for text in [
        MINIMAL.to_string(),
        "model = porous\nalpha = 0.6\ns = 0.7\np = 1.25\nm = 2.5\n".into(),
        format!("{MINIMAL}method = spectral-duhamel\ndim = 2\nnodes = 17\nhalf_width = 4\n"),
        format!("{MINIMAL}initial = scaled_eigen\neigen_factor = 2.5\nhistory_window = 200\nseed = 99\n"),
        format!("{MINIMAL}initial = file\ninitial_file = {}\n", file.display()),
        format!("{MINIMAL}sweep_axis = mu\nsweep_values = 0.5,1.5,2\nkernel_shape = box\n"),
    ] {
        roundtrip(&parse_config(&text).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn echo_roundtrip_random(alpha in 0.05f64..1.0, s in 0.05f64..0.95, mu in 0.1f64..10.0,
                             gamma in 1.0f64..5.0, dt in 1e-6f64..1e-2, seed in any::<u64>()) {
        let text = format!("alpha = {alpha}\ns = {s}\np = 2\nmu = {mu}\ngamma = {gamma}\ndt = {dt}\nseed = {seed}\n");
        let c = parse_config(&text).unwrap();
        prop_assert_eq!(c.params.alpha, alpha);
        prop_assert_eq!(&parse_config(&echo(&c)).unwrap(), &c);
    }
}
