use fracrd_core::diagnostics::*;
use fracrd_core::eigen::first_eigenpair_linear;
use fracrd_core::evolution::*;
use fracrd_core::spatial::*;
use fracrd_core::special::{gamma, mittag_leffler};
use fracrd_core::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line(l: f64, n: usize) -> Grid {
    Grid::new(1, l, n).unwrap()
}

fn bump(g: Grid, amp: f64, width: f64) -> Field {
    Field::from_fn(g, |x| amp * (-(x[0] * x[0] + x[1] * x[1]) / (2.0 * width * width)).exp())
}

#[test]
fn steady_roots_example_and_vieta() {
    let r = steady_roots(8.0, 1.0, 1.0).unwrap();
    assert!((r.a - (1.0 - 0.5f64.sqrt()) / 2.0).abs() < 1e-15);
    assert!((r.a - 0.146447).abs() < 1e-6);
    assert!((r.big_a - 0.853553).abs() < 1e-6);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let k = rng.gen_range(0.1..5.0);
        let gam = rng.gen_range(1.0..10.0);
        let mu = 4.0 * k * gam * rng.gen_range(1.01..50.0);
        let r = steady_roots(mu, k, gam).unwrap();
        assert!(0.0 < r.a && r.a < r.big_a);
        assert!((mu * r.a * r.a * (1.0 - k * r.a) - gam * r.a).abs() <= 1e-12);
        assert!((mu * r.big_a.powi(2) * (1.0 - k * r.big_a) - gam * r.big_a).abs() <= 1e-12);
        assert!((r.a * r.big_a - gam / (k * mu)).abs() <= 1e-12 * gam / (k * mu));
        assert!((r.a + r.big_a - 1.0 / k).abs() <= 1e-12 / k);
        // factorization mu u^2 (1 - k u) - gamma u = k mu u (A - u)(u - a)
        for u in [0.3 * r.a, 0.5 * (r.a + r.big_a), 2.0 * r.big_a] {
            let lhs = r.f(u);
            let rhs = k * mu * u * (r.big_a - u) * (u - r.a);
            assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
        }
    }
}

#[test]
fn steady_roots_coalesce_and_reject() {
    let r = steady_roots(4.0 * (1.0 + 1e-12), 1.0, 1.0).unwrap();
    assert!((r.a - 0.5).abs() < 1e-5 && (r.big_a - 0.5).abs() < 1e-5);
    assert!(matches!(steady_roots(3.9, 1.0, 1.0), Err(Error::Regime(_))));
    assert!(matches!(steady_roots(4.0, 1.0, 1.0), Err(Error::Regime(_))));
    assert!(matches!(steady_roots(8.0, 1.0, 0.5), Err(Error::Regime(_))));
}

#[test]
fn lyapunov_zero_and_domain() {
    let g = line(2.0, 41);
    let r = steady_roots(8.0, 1.0, 1.0).unwrap();
    assert_eq!(lyapunov(&Field::zeros(g), &r, [0.0; 2], 0.5).unwrap(), (0.0, 0.0));
    let big = Field::constant(g, r.a);
    assert!(matches!(lyapunov(&big, &r, [0.0; 2], 0.5), Err(Error::Domain(_))));
    // only the cube counts
    let mut u = Field::zeros(g);
    u.values[0] = 10.0;
    assert!(lyapunov(&u, &r, [0.0; 2], 0.5).is_ok());
    assert!(matches!(lyapunov(&u, &r, [0.0; 2], 5.0), Err(Error::Domain(_))));
}

#[test]
fn h_derivatives_match_finite_differences() {
    let r = steady_roots(8.0, 1.0, 1.0).unwrap();
    let check = |u: f64| {
        let eps = 1e-4 * u.min(r.a - u);
        let fd1 = (r.h(u + eps) - r.h(u - eps)) / (2.0 * eps);
        let fd2 = (r.h_prime(u + eps) - r.h_prime(u - eps)) / (2.0 * eps);
        assert!((fd1 - r.h_prime(u)).abs() <= 1e-6 * r.h_prime(u).abs(), "h' at {u}: {fd1} vs {}", r.h_prime(u));
        assert!((fd2 - r.h_second(u)).abs() <= 1e-6 * r.h_second(u).abs(), "h'' at {u}");
        assert!(r.h_second(u) > r.h_second_floor());
        assert!(r.h(u) >= 0.0);
    };
    check(0.1 * r.a);
    for i in 1..=50 {
        check(0.99 * r.a * i as f64 / 50.0);
    }
}

#[test]
fn lyapunov_pair_nonnegative_on_random_fields() {
    let g = line(4.0, 65);
    let r = steady_roots(10.0, 1.5, 1.2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let vals: Vec<f64> = (0..g.len()).map(|_| rng.gen_range(-0.5..0.99) * r.a).collect();
        let u = Field::new(g, vals).unwrap();
        let (h, d) = lyapunov(&u, &r, [0.5, 0.0], 1.0).unwrap();
        assert!(h >= 0.0 && d >= 0.0);
    }
}

#[test]
fn local_mass_examples() {
    let g = line(2.0, 41);
    assert_eq!(local_mass(&Field::zeros(g), [0.0; 2], 0.5, 2.0).unwrap(), 0.0);
    let one = Field::constant(g, 1.0);
    assert!((local_mass(&one, [0.0; 2], 0.5, 1.0).unwrap() - 1.0).abs() < 1e-12);
    // cube edges off the nodes still get the exact length
    assert!((local_mass(&one, [0.013, 0.0], 0.377, 3.0).unwrap() - 0.754).abs() < 1e-12);
    assert!(matches!(local_mass(&one, [1.8, 0.0], 0.5, 1.0), Err(Error::Domain(_))));

    let g2 = Grid::new(2, 2.0, 21).unwrap();
    let one2 = Field::constant(g2, 1.0);
    assert!((local_mass(&one2, [0.1, -0.2], 0.5, 2.0).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn local_mass_against_refined_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let c: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = move |x: [f64; 2]| 2.0 + c[0] * (x[0] + c[1]).sin() + c[2] * (2.0 * x[0] + c[3]).cos();
        let coarse = Field::from_fn(line(3.0, 61), f.clone());
        let fine = Field::from_fn(line(3.0, 601), f);
        for power in [1.0, 2.0, 3.0] {
            let a = local_mass(&coarse, [0.2, 0.0], 0.7, power).unwrap();
            let b = local_mass(&fine, [0.2, 0.0], 0.7, power).unwrap();
            assert!((a - b).abs() <= 0.01 * b.abs(), "{a} vs {b}");
        }
    }
}

#[test]
fn blowup_window_examples() {
    let w = blowup_window(0.5, 2.0).unwrap();
    let g15: f64 = 0.886_226_925_452_758;
    assert!((w.t_lo - (g15 / 10.0).powi(2)).abs() < 1e-12);
    assert!((w.t_lo - 0.007854).abs() < 1e-6);
    assert!((w.t_hi - 0.19635).abs() < 1e-5);
    let w = blowup_window(1.0, 1.0).unwrap();
    assert!((w.t_lo - 1.0 / 6.0).abs() < 1e-12 && (w.t_hi - 1.0).abs() < 1e-12);
    assert!(blowup_window(0.5, 0.0).is_err());
    assert!(blowup_window(0.5, -1.0).is_err());
}

#[test]
fn blowup_functional_examples() {
    let g = line(4.0, 65);
    let pair = first_eigenpair_linear(g, 0.5).unwrap();
    let z = blowup_functional(&Field::zeros(g), &pair).unwrap();
    assert_eq!(z.h0, 0.0);
    assert!(!z.triggers);
    let norm = pair.e1.dot(&pair.e1).unwrap();
    let target = 1.0 + pair.lambda1;
    let u0 = pair.e1.scaled(target / norm);
    let b = blowup_functional(&u0, &pair).unwrap();
    assert!((b.h0 - target).abs() < 1e-12 * target);
    assert_eq!(b.threshold, target);
    let b2 = blowup_functional(&u0.scaled(2.5), &pair).unwrap();
    assert!((b2.h0 - 2.5 * b.h0).abs() < 1e-12 * b2.h0);
    assert!(b2.triggers);
    assert!(!blowup_functional(&u0.scaled(0.9), &pair).unwrap().triggers);
}

#[test]
fn decay_fit_on_mittag_leffler_data() {
    for alpha in [0.5, 0.8] {
        let times: Vec<f64> = (0..=400).map(|i| i as f64 * 0.0125).collect();
        let vals: Vec<f64> = times.iter().map(|&t| mittag_leffler(alpha, -t.powf(alpha)).unwrap()).collect();
        let fit = decay_fit_series(&times, &vals, alpha).unwrap();
        let best = fit.best.unwrap();
        assert_eq!(best.kind, EnvelopeKind::MittagLeffler);
        assert!((best.sigma - 1.0).abs() < 0.05, "sigma {}", best.sigma);
        assert!(best.residual < 1e-3);
    }
}

#[test]
fn decay_fit_on_relaxation_run() {
    let g = line(8.0, 33);
    let ker = Kernel::new(g, KernelShape::Gaussian { width: 1.0 }, 0.5, 1e-3).unwrap();
    let alpha = 0.6;
    let mut p = SimParams::new(alpha, 0.5, 2.0, 1);
    p.mu = 0.0;
    p.diffusion_scale = 0.0;
    p.dt = 2.5e-3;
    p.t_end = 5.0;
    let tr = run(&bump(g, 0.1, 1.0), &p, &ker).unwrap();
    let fit = decay_fit(&tr, alpha).unwrap();
    let best = fit.best.unwrap();
    assert!((best.sigma - 1.0).abs() < 0.05, "{fit:?}");
}

#[test]
fn decay_fit_rejects_constant_data() {
    let times: Vec<f64> = (0..50).map(|i| i as f64 * 0.1).collect();
    let fit = decay_fit_series(&times, &[0.3; 50], 0.5).unwrap();
    assert!(fit.best.is_none() && fit.rejected.is_some());
}

#[test]
fn moser_zero_trajectory_and_limits() {
    let g = line(4.0, 33);
    let mut p = SimParams::new(0.6, 0.7, 1.25, 1);
    p.m = 2.5;
    p.dt = 1e-3;
    p.t_end = 0.02;
    let tr = run_porous(&Field::zeros(g), &p).unwrap();
    let t = moser_tracker(&tr, 4, MoserConstants::default()).unwrap();
    assert!(t.ln_norms.iter().flatten().all(|&v| v == f64::NEG_INFINITY));
    assert_eq!(t.max_ratio, 0.0);
    assert_eq!(t.q, vec![3.0, 4.0, 6.0, 10.0, 18.0]);
    assert!(moser_tracker(&tr, 7, MoserConstants::default()).is_err());
}

#[test]
fn moser_bound_holds_on_porous_run() {
    let g = line(4.0, 33);
    let mut p = SimParams::new(0.6, 0.7, 1.25, 1);
    p.m = 2.5;
    // the bound only exceeds y0 itself once T^alpha >= alpha Gamma(alpha)
    p.dt = 5e-4;
    p.t_end = 2.0;
    p.store_stride = 40;
    let tr = run_porous(&bump(g, 0.8, 0.7), &p).unwrap();
    assert_eq!(tr.status, Status::Completed);
    assert_eq!(tr.positivity_warnings, 0);
    let t = moser_tracker(&tr, 4, MoserConstants::default()).unwrap();
    assert!(t.max_ratio <= 1.05, "{:?}", t.ratios);
}

#[test]
fn weighted_mass_reductions() {
    let g = line(4.0, 41);
    let phi = WeightFunction::power_law(g, 1.0).unwrap();
    assert_eq!(weighted_mass(&Field::zeros(g), &phi).unwrap(), 0.0);
    let u = bump(g, 0.7, 1.0);
    let one = WeightFunction::constant(g);
    assert!((weighted_mass(&u, &one).unwrap() - u.integral()).abs() < 1e-14);
    let v = Field::from_fn(g, |x| x[0].cos());
    let lin = weighted_mass(&Field::new(g, u.values.iter().zip(&v.values).map(|(a, b)| 2.0 * a - 3.0 * b).collect()).unwrap(), &phi).unwrap();
    let sep = 2.0 * weighted_mass(&u, &phi).unwrap() - 3.0 * weighted_mass(&v, &phi).unwrap();
    assert!((lin - sep).abs() < 1e-13);
    assert!(WeightFunction::sampled(Field::zeros(g)).is_err());
    assert!(WeightFunction::power_law(g, 0.0).is_err());
}

#[test]
fn weight_decay_exponent_at_edge() {
    let g = line(40.0, 401);
    let phi = WeightFunction::power_law(g, 1.1).unwrap();
    assert!((phi.edge_decay_exponent() - 2.1).abs() < 0.01);
}

#[test]
fn weight_class_band() {
    let (s, p, m) = (0.7, 1.25, 2.5);
    assert!(in_admissible_band(1.1, s, p, m));
    assert!(!in_admissible_band(0.8, s, p, m));
    assert!(!in_admissible_band(1.5, s, p, m));
    let g = line(16.0, 257);
    let inside = weight_class_constant(&WeightFunction::power_law(g, 1.1).unwrap(), s, p, m).unwrap();
    assert!(inside.value.is_finite() && inside.member, "{inside:?}");
    let above = weight_class_constant(&WeightFunction::power_law(g, 3.0).unwrap(), s, p, m).unwrap();
    assert!(!above.member, "{above:?}");
    assert!(above.growth.unwrap() > inside.growth.unwrap());
    assert!(matches!(weight_class_constant(&WeightFunction::constant(g), 0.7, 1.5, 2.5), Err(Error::Regime(_))));
}

#[test]
fn constant_weight_operator_is_pure_tail_inside() {
    let g = line(4.0, 41);
    let one = WeightFunction::constant(g);
    let mv = m_operator(&one.field, 0.4).unwrap();
    let op = FracPLaplacian::new(g, OperatorParams::new(0.4, 2.0, 1)).unwrap();
    for (a, b) in mv.iter().zip(op.tail()) {
        assert!((a - b).abs() <= 1e-14 * b);
    }
}

#[test]
fn holder_check_identical_pair_and_ordering() {
    let g = line(4.0, 33);
    let mut p = SimParams::new(0.6, 0.7, 1.25, 1);
    p.m = 2.5;
    p.dt = 1e-3;
    p.t_end = 0.05;
    let u = run_porous(&bump(g, 0.5, 0.7), &p).unwrap();
    let phi = WeightFunction::power_law(g, 1.1).unwrap();
    let r = holder_mass_check(&u, &u, &phi, 0.7, 1.25, 2.5, 1.0).unwrap();
    assert!(r.x.iter().all(|&v| v == 0.0));
    assert_eq!(r.k_hat, 0.0);
    assert!(r.pass_constant);
    assert!((r.beta - (1.0 - 2.5 * 0.25)).abs() < 1e-15);
    assert!((r.k_phi - (r.c_phi / (0.6 * gamma(0.6))).powf(r.beta)).abs() < 1e-12 * r.k_phi);

    let v = run_porous(&bump(g, 0.2, 0.7), &p).unwrap();
    assert!(matches!(holder_mass_check(&v, &u, &phi, 0.7, 1.25, 2.5, 1.0), Err(Error::Domain(_))));
    assert!(holder_mass_check(&u, &v, &phi, 0.7, 1.25, 2.5, 1.0).is_ok());
    assert!(matches!(holder_mass_check(&u, &v, &phi, 0.7, 2.5, 0.5, 1.0), Err(Error::Regime(_))));
}

fn competition_run(alpha: f64, s: f64, amp: f64, k: f64) -> (Trajectory, f64) {
    let g = line(8.0, 65);
    let ker = Kernel::new(g, KernelShape::Gaussian { width: 1.0 }, 1.0, 1e-3).unwrap();
    let mut p = SimParams::new(alpha, s, 2.0, 1);
    p.k = k;
    p.dt = 1e-3;
    p.t_end = 0.5;
    (run(&bump(g, amp, 1.0), &p, &ker).unwrap(), ker.floor())
}

#[test]
fn local_energy_residual_zero_trajectory() {
    let g = line(8.0, 33);
    let ker = Kernel::new(g, KernelShape::Gaussian { width: 1.0 }, 1.0, 1e-3).unwrap();
    let mut p = SimParams::new(0.5, 0.5, 2.0, 1);
    p.t_end = 0.02;
    let tr = run(&Field::zeros(g), &p, &ker).unwrap();
    let r = inequality_11_residual(&tr, ker.floor(), [0.0; 2], 0.5).unwrap();
    assert!(r.terms.iter().all(|t| t.residual == 0.0));
    assert_eq!(r.max_positive, 0.0);
    assert_eq!(r.curve.values.len(), 20);
}

#[test]
fn local_energy_residual_nonpositive_in_regime() {
    for (alpha, s, amp, k) in [(0.5, 0.5, 0.5, 2.0), (0.8, 0.3, 1.0, 4.0)] {
        let (tr, eta) = competition_run(alpha, s, amp, k);
        // cube half width at most half the kernel's floor radius
        let r = inequality_11_residual(&tr, eta, [0.0; 2], 0.5).unwrap();
        for t in &r.terms {
            assert!([t.caputo, t.seminorm, t.cubic, t.coupling, t.damping, t.residual].iter().all(|v| v.is_finite()));
        }
        assert!(r.max_positive <= 1e-6 * r.scale, "{}", r.max_positive);
    }
}

#[test]
fn local_energy_residual_needs_dense_snapshots() {
    let g = line(8.0, 33);
    let ker = Kernel::new(g, KernelShape::Gaussian { width: 1.0 }, 1.0, 1e-3).unwrap();
    let mut p = SimParams::new(0.5, 0.5, 2.0, 1);
    p.t_end = 0.02;
    p.store_stride = 2;
    let tr = run(&bump(g, 0.3, 1.0), &p, &ker).unwrap();
    assert!(matches!(inequality_11_residual(&tr, 0.1, [0.0; 2], 0.5), Err(Error::Data(_))));
}

#[test]
fn matrix_csv_layout() {
    let rows = [
        CheckRow::new("decay", "sigma", "mu=0.05, gamma=1", 0.98, 1.2, 0.22, true),
        CheckRow::new("order", "l1", "alpha=0.4", 1.61, 1.35, 0.26, false),
    ];
    let csv = matrix_csv(&rows);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "theorem,check,regime,value,bound,slack,pass");
    assert_eq!(lines[1], "decay,sigma,\"mu=0.05, gamma=1\",0.98,1.2,0.22,true");
    assert_eq!(lines[2], "order,l1,alpha=0.4,1.61,1.35,0.26,false");
}

proptest! {
    #[test]
    fn window_is_ordered(alpha in 0.05f64..1.0, h0 in 1e-3f64..1e3) {
        let w = blowup_window(alpha, h0).unwrap();
        prop_assert!(w.t_lo < w.t_hi);
        let ratio = (h0 / (4.0 * h0 + 2.0)).powf(1.0 / alpha);
        prop_assert!((w.t_lo / w.t_hi - ratio).abs() <= 1e-12 * ratio.max(1e-300));
        // Gamma(alpha+1)^{1/alpha} scaling
        let g = gamma(alpha + 1.0).powf(1.0 / alpha);
        prop_assert!((w.t_hi - g * h0.powf(-1.0 / alpha)).abs() <= 1e-12 * w.t_hi);
    }

    #[test]
    fn roots_postcondition(k in 0.1f64..5.0, gam in 1.0f64..10.0, f in 1.001f64..100.0) {
        let mu = 4.0 * k * gam * f;
        let r = steady_roots(mu, k, gam).unwrap();
        // absolute 1e-12 is below rounding once mu A^2 is large
        for u in [r.a, r.big_a] {
            prop_assert!(r.f(u).abs() <= 1e-12 * (mu * u * u).max(1.0));
        }
    }

    #[test]
    fn moser_norms_monotone_in_k(vals in proptest::collection::vec(-1.0f64..1.0, 17)) {
        let u = Field::new(line(2.0, 17), vals).unwrap();
        let ln: Vec<f64> = (0..6).map(|k| ln_power_integral(&u, q_k(k))).collect();
        for w in ln.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-12);
        }
    }
}
