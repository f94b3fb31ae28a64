use approx::assert_abs_diff_eq;

use schlingel::core4d::{RelativityConfig, Vector3};
use schlingel::maps::{parse_trajectory_csv, trajectory_csv};
use schlingel::pipeline::{four_position, run, PipelineConfig};
use schlingel::sim::{drift_report, generate, MotionProfile, ProfileKind};
use schlingel::strapdown::{integrate_velocity, CorrectionTerms, TimedVector};

fn simulate(kind: ProfileKind, duration: f64, rate: f64) -> (Vec<schlingel::pipeline::TrajectoryPoint>, Vec<schlingel::pipeline::TrajectoryPoint>) {
    let profile = MotionProfile::new(kind, duration, rate);
    let (samples, truth) = generate(&profile, &RelativityConfig::default()).unwrap();
    let config = PipelineConfig {
        initial_state: profile.initial_state(),
        ..PipelineConfig::default()
    };
    (run(&samples, &config).unwrap(), truth)
}

#[test]
fn four_position_matches_exported_rows() {
    let (est, _) = simulate(ProfileKind::Circle { radius: 0.5, period: 4.0 }, 4.0, 100.0);
    let parsed = parse_trajectory_csv(&trajectory_csv(&est).unwrap()).unwrap();
    for (p, row) in est.iter().zip(&parsed) {
        let chi = four_position(p).unwrap();
        assert_abs_diff_eq!(chi.zeta, row.chi.zeta, epsilon = 1e-9);
        assert_abs_diff_eq!(chi.x, row.chi.x, epsilon = 1e-9);
        assert_abs_diff_eq!(chi.y, row.chi.y, epsilon = 1e-9);
        assert_abs_diff_eq!(chi.z, row.chi.z, epsilon = 1e-9);
    }
}

#[test]
fn constant_accel_is_exact_and_linear_ramp_is_second_order() {
    // trapezoid integrates constant acceleration exactly
    let (est, truth) = simulate(ProfileKind::ConstantAccel { accel: Vector3::new(0.2, -0.1, 0.05) }, 1.0, 100.0);
    let r = drift_report(&est, &truth).unwrap();
    assert!(r.max_position_error < 1e-14, "{r:?}");

    // for a = j·t the per-step velocity is exact and position error is j·t·h²/12
    let j = 0.3;
    let mut errors = Vec::new();
    for rate in [100.0, 200.0, 400.0] {
        let (est, truth) = simulate(ProfileKind::LinearRamp { jerk: Vector3::new(j, 0.0, 0.0) }, 1.0, rate);
        let r = drift_report(&est, &truth).unwrap();
        let h = 1.0 / rate;
        assert_abs_diff_eq!(r.final_position_error, j * 1.0 * h * h / 12.0, epsilon = 1e-12);
        errors.push(r.final_position_error);
    }
    assert!(errors[0] / errors[1] >= 3.5 && errors[1] / errors[2] >= 3.5);
}

#[test]
fn velocity_quadrature_converges_at_second_order() {
    type Pair = (fn(f64) -> f64, fn(f64) -> f64);
    let cases: [Pair; 2] = [
        (|t| (2.0 * t).sin(), |t| (1.0 - (2.0 * t).cos()) / 2.0),
        (|t| t * t * t - t, |t| t.powi(4) / 4.0 - t * t / 2.0),
    ];
    for (a, v) in cases {
        let error = |n: usize| {
            let samples: Vec<_> = (0..=n)
                .map(|k| {
                    let t = 1.3 * k as f64 / n as f64;
                    TimedVector::new(t, Vector3::new(a(t), 0.0, 0.0))
                })
                .collect();
            let out = integrate_velocity(&samples, &CorrectionTerms::default()).unwrap();
            (out.last().unwrap().value.x - v(1.3)).abs()
        };
        let (e1, e2, e3) = (error(50), error(100), error(200));
        assert!(e1 / e2 >= 3.5 && e2 / e3 >= 3.5, "{e1:e} {e2:e} {e3:e}");
    }
}

#[test]
fn primed_angles_track_boost_on_circle() {
    let (est, _) = simulate(ProfileKind::Circle { radius: 1.0, period: 10.0 }, 10.0, 200.0);
    let speed = std::f64::consts::TAU / 10.0;
    let tau = 1.0 / (1.0 - speed * speed).sqrt() - 1.0;
    let last = est.last().unwrap();
    assert_abs_diff_eq!(last.tau_gamma, tau, epsilon = 1e-6);
    assert_abs_diff_eq!(last.primed.psi_p, last.angles.psi * (1.0 + last.tau_gamma), epsilon = 1e-12);
}
