//! Synthetic IMU datasets with closed-form ground truth.
//!
//! Samples are world-frame kinematic accelerations with gravity already
//! removed, so they feed [`crate::pipeline::run`] with an empty frame chain.

use std::f64::consts::TAU;

use nalgebra::Rotation3;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::core4d::{primed_angles, EulerAngles, FourVector, RelativityConfig, Vector3};
use crate::frames::wrap_angle;
use crate::pipeline::TrajectoryPoint;
use crate::strapdown::{ImuSample, KinematicState};

/// World magnetic field in µT (north, east-free, pointing down).
pub const WORLD_FIELD: Vector3 = Vector3::new(20.0, 0.0, -40.0);

/// Substeps per output step used by the temporal-coordinate reference.
const FINE_FACTOR: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("InvalidProfile: {0}")]
    InvalidProfile(String),
    #[error("truth speed {speed} m/s reaches the limit at t = {t} s")]
    SuperluminalTruth { t: f64, speed: f64 },
    #[error("LengthMismatch: estimated has {estimated} points, truth has {truth}")]
    LengthMismatch { estimated: usize, truth: usize },
    #[error("timestamps differ at index {index}: {estimated} vs {truth}")]
    TimestampMismatch {
        index: usize,
        estimated: f64,
        truth: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileKind {
    Rest,
    ConstantAccel { accel: Vector3 },
    /// `a(t) = jerk·t`
    LinearRamp { jerk: Vector3 },
    /// Counter-clockwise circle in the x–y plane starting at the origin with
    /// velocity along +y; the heading turns at `2π/period`.
    Circle { radius: f64, period: f64 },
    /// `a(t) = amplitude·sin(2πt/period)` from rest.
    Sinusoid { amplitude: Vector3, period: f64 },
}

impl ProfileKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ProfileKind::Rest => "rest",
            ProfileKind::ConstantAccel { .. } => "constant_accel",
            ProfileKind::LinearRamp { .. } => "linear_ramp",
            ProfileKind::Circle { .. } => "circle",
            ProfileKind::Sinusoid { .. } => "sinusoid",
        }
    }
}

/// Per-channel Gaussian standard deviations.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseSigma {
    pub accel: f64,
    pub gyro: f64,
    pub mag: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionProfile {
    pub kind: ProfileKind,
    pub duration: f64,
    pub rate: f64,
    pub noise: Option<NoiseSigma>,
    pub seed: u64,
}

/// Closed-form state at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Truth {
    position: Vector3,
    velocity: Vector3,
    accel: Vector3,
    yaw_rate: f64,
    yaw: f64,
}

impl MotionProfile {
    pub fn new(kind: ProfileKind, duration: f64, rate: f64) -> Self {
        Self {
            kind,
            duration,
            rate,
            noise: None,
            seed: 0,
        }
    }

    pub fn with_noise(mut self, noise: NoiseSigma, seed: u64) -> Self {
        self.noise = Some(noise);
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: String| Err(SimError::InvalidProfile(m));
        if !(self.rate.is_finite() && self.rate > 0.0) {
            return bad(format!("rate must be > 0, got {}", self.rate));
        }
        if !(self.duration.is_finite() && self.duration > 0.0) {
            return bad(format!("duration must be > 0, got {}", self.duration));
        }
        if self.sample_count() < 2 {
            return bad("duration·rate must yield at least two samples".into());
        }
        let finite = |v: &Vector3| v.iter().all(|c| c.is_finite());
        match self.kind {
            ProfileKind::Rest => {}
            ProfileKind::ConstantAccel { accel } if !finite(&accel) => {
                return bad("accel must be finite".into())
            }
            ProfileKind::LinearRamp { jerk } if !finite(&jerk) => {
                return bad("jerk must be finite".into())
            }
            ProfileKind::Circle { radius, period } => {
                if !(radius.is_finite() && radius > 0.0) {
                    return bad(format!("radius must be > 0, got {radius}"));
                }
                if !(period.is_finite() && period > 0.0) {
                    return bad(format!("period must be > 0, got {period}"));
                }
            }
            ProfileKind::Sinusoid { amplitude, period } => {
                if !finite(&amplitude) {
                    return bad("amplitude must be finite".into());
                }
                if !(period.is_finite() && period > 0.0) {
                    return bad(format!("period must be > 0, got {period}"));
                }
            }
            _ => {}
        }
        if let Some(n) = self.noise {
            if ![n.accel, n.gyro, n.mag].iter().all(|s| s.is_finite() && *s >= 0.0) {
                return bad("noise sigmas must be finite and >= 0".into());
            }
        }
        Ok(())
    }

    /// Samples at `k/rate` for `k = 0..=round(duration·rate)`, endpoint included.
    pub fn sample_count(&self) -> usize {
        (self.duration * self.rate).round() as usize + 1
    }

    fn time(&self, k: usize) -> f64 {
        k as f64 / self.rate
    }

    fn truth_at(&self, t: f64) -> Truth {
        let zero = Vector3::zeros();
        match self.kind {
            ProfileKind::Rest => Truth {
                position: zero,
                velocity: zero,
                accel: zero,
                yaw_rate: 0.0,
                yaw: 0.0,
            },
            ProfileKind::ConstantAccel { accel } => Truth {
                position: accel * (0.5 * t * t),
                velocity: accel * t,
                accel,
                yaw_rate: 0.0,
                yaw: 0.0,
            },
            ProfileKind::LinearRamp { jerk } => Truth {
                position: jerk * (t * t * t / 6.0),
                velocity: jerk * (0.5 * t * t),
                accel: jerk * t,
                yaw_rate: 0.0,
                yaw: 0.0,
            },
            ProfileKind::Circle { radius, period } => {
                let w = TAU / period;
                let (s, c) = (w * t).sin_cos();
                Truth {
                    position: Vector3::new(radius * (c - 1.0), radius * s, 0.0),
                    velocity: Vector3::new(-radius * w * s, radius * w * c, 0.0),
                    accel: Vector3::new(-radius * w * w * c, -radius * w * w * s, 0.0),
                    yaw_rate: w,
                    yaw: w * t,
                }
            }
            ProfileKind::Sinusoid { amplitude, period } => {
                let k = TAU / period;
                let (s, c) = (k * t).sin_cos();
                Truth {
                    position: amplitude * ((t - s / k) / k),
                    velocity: amplitude * ((1.0 - c) / k),
                    accel: amplitude * s,
                    yaw_rate: 0.0,
                    yaw: 0.0,
                }
            }
        }
    }

    /// State matching the profile at `t = 0`, to seed the pipeline.
    pub fn initial_state(&self) -> KinematicState {
        let tr = self.truth_at(0.0);
        KinematicState {
            t: 0.0,
            velocity: tr.velocity,
            translation: tr.position,
            angles: EulerAngles::new(tr.yaw, 0.0, 0.0),
        }
    }
}

/// Body-frame field for a given heading; `heading_from_magnetic` of the
/// result returns `yaw`.
fn field_at(yaw: f64) -> Vector3 {
    Rotation3::from_axis_angle(&Vector3::z_axis(), yaw) * WORLD_FIELD
}

/// IMU samples for the profile. Never fails on speed, so datasets that
/// exceed `c` can be produced on purpose.
pub fn generate_samples(profile: &MotionProfile) -> Result<Vec<ImuSample>, SimError> {
    profile.validate()?;
    let mut noise = profile.noise.map(|sigma| {
        let normal = |s: f64| Normal::new(0.0, s).expect("validated sigma");
        (
            ChaCha8Rng::seed_from_u64(profile.seed),
            normal(sigma.accel),
            normal(sigma.gyro),
            normal(sigma.mag),
        )
    });
    let samples = (0..profile.sample_count())
        .map(|k| {
            let t = profile.time(k);
            let tr = profile.truth_at(t);
            let mut accel = tr.accel;
            let mut gyro = Vector3::new(0.0, 0.0, tr.yaw_rate);
            let mut mag = field_at(tr.yaw);
            if let Some((rng, na, ng, nm)) = noise.as_mut() {
                for v in accel.iter_mut() {
                    *v += na.sample(rng);
                }
                for v in gyro.iter_mut() {
                    *v += ng.sample(rng);
                }
                for v in mag.iter_mut() {
                    *v += nm.sample(rng);
                }
            }
            ImuSample::new(t, accel, gyro, mag)
        })
        .collect();
    Ok(samples)
}

/// Samples plus the analytic trajectory at the same timestamps.
///
/// Position, velocity and angles are closed-form. The temporal coordinate
/// takes the boost scalar from the velocity one fine substep (a tenth of the
/// sample interval) earlier, multiplied by the distance from the start.
pub fn generate(
    profile: &MotionProfile,
    relativity: &RelativityConfig,
) -> Result<(Vec<ImuSample>, Vec<TrajectoryPoint>), SimError> {
    let samples = generate_samples(profile)?;
    let c = relativity.c();
    let limit = relativity.speed_limit();
    let gamma = |speed: f64| 1.0 / (1.0 - (speed / c) * (speed / c)).sqrt();
    let h = 1.0 / (profile.rate * FINE_FACTOR as f64);
    let origin = profile.truth_at(0.0).position;
    let truth = samples
        .iter()
        .map(|s| {
            let tr = profile.truth_at(s.t);
            let speed = tr.velocity.norm();
            if speed >= limit {
                return Err(SimError::SuperluminalTruth { t: s.t, speed });
            }
            let tau = if s.t == 0.0 {
                gamma(speed) - 1.0
            } else {
                gamma(profile.truth_at(s.t - h).velocity.norm()) - 1.0
            };
            let zeta = if s.t == 0.0 {
                0.0
            } else {
                tau * (tr.position - origin).norm()
            };
            let angles = EulerAngles::new(tr.yaw, 0.0, 0.0);
            Ok(TrajectoryPoint {
                t: s.t,
                chi: FourVector::from_parts(zeta, tr.position),
                velocity: tr.velocity,
                speed,
                gamma: gamma(speed),
                tau_gamma: tau,
                angles,
                primed: primed_angles(&angles, tau),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((samples, truth))
}

/// Drift between an estimated trajectory and ground truth.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DriftReport {
    /// Spatial distance at the last sample, m.
    pub final_position_error: f64,
    pub max_position_error: f64,
    pub rms_position_error: f64,
    /// Absolute wrapped difference of the final headings, rad.
    pub heading_error: f64,
}

pub fn drift_report(
    estimated: &[TrajectoryPoint],
    truth: &[TrajectoryPoint],
) -> Result<DriftReport, SimError> {
    if estimated.len() != truth.len() {
        return Err(SimError::LengthMismatch {
            estimated: estimated.len(),
            truth: truth.len(),
        });
    }
    let mut report = DriftReport::default();
    if estimated.is_empty() {
        return Ok(report);
    }
    let mut sum_sq = 0.0;
    for (index, (e, t)) in estimated.iter().zip(truth).enumerate() {
        if (e.t - t.t).abs() > 1e-9 * e.t.abs().max(1.0) {
            return Err(SimError::TimestampMismatch {
                index,
                estimated: e.t,
                truth: t.t,
            });
        }
        let err = (e.chi.spatial() - t.chi.spatial()).norm();
        report.max_position_error = report.max_position_error.max(err);
        sum_sq += err * err;
        report.final_position_error = err;
    }
    report.rms_position_error = (sum_sq / estimated.len() as f64).sqrt();
    let (e, t) = (estimated.last().unwrap(), truth.last().unwrap());
    report.heading_error = wrap_angle(e.angles.psi - t.angles.psi).abs();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::heading_from_magnetic;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rest_is_all_zero() {
        let p = MotionProfile::new(ProfileKind::Rest, 1.0, 100.0);
        let (samples, truth) = generate(&p, &RelativityConfig::default()).unwrap();
        assert_eq!(samples.len(), 101);
        assert!(samples.iter().all(|s| s.accel == Vector3::zeros() && s.gyro == Vector3::zeros()));
        assert!(truth.iter().all(|p| p.chi == FourVector::ZERO && p.gamma == 1.0));
    }

    #[test]
    fn constant_accel_truth() {
        let p = MotionProfile::new(
            ProfileKind::ConstantAccel {
                accel: Vector3::new(0.2, 0.0, 0.0),
            },
            1.0,
            100.0,
        );
        let (_, truth) = generate(&p, &RelativityConfig::default()).unwrap();
        for pt in &truth {
            assert_abs_diff_eq!(pt.chi.x, 0.1 * pt.t * pt.t, epsilon = 1e-15);
            assert_abs_diff_eq!(pt.velocity.x, 0.2 * pt.t, epsilon = 1e-15);
        }
    }

    #[test]
    fn circle_closes_after_one_period() {
        let p = MotionProfile::new(ProfileKind::Circle { radius: 1.0, period: 10.0 }, 10.0, 100.0);
        let (samples, truth) = generate(&p, &RelativityConfig::default()).unwrap();
        let last = truth.last().unwrap();
        assert_eq!(last.t, 10.0);
        assert!(last.chi.spatial().norm() < 1e-9);
        assert_abs_diff_eq!(last.angles.psi, TAU, epsilon = 1e-12);
        let peak = truth.iter().map(|p| p.speed).fold(0.0, f64::max);
        assert_abs_diff_eq!(peak, TAU / 10.0, epsilon = 1e-12);
        // magnetometer heading follows the yaw
        let k = 250;
        let heading = heading_from_magnetic(&samples[k].mag, 0.0).unwrap();
        assert_abs_diff_eq!(heading, wrap_angle(truth[k].angles.psi), epsilon = 1e-12);
    }

    #[test]
    fn seeded_noise_is_reproducible() {
        let sigma = NoiseSigma {
            accel: 0.01,
            gyro: 0.001,
            mag: 0.5,
        };
        let p = MotionProfile::new(ProfileKind::Rest, 1.0, 50.0).with_noise(sigma, 42);
        let a = generate_samples(&p).unwrap();
        let b = generate_samples(&p).unwrap();
        assert_eq!(a, b);
        let c = generate_samples(&MotionProfile { seed: 43, ..p }).unwrap();
        assert_ne!(a, c);
        assert!(a.iter().any(|s| s.accel != Vector3::zeros()));
    }

    #[test]
    fn superluminal_truth_is_rejected_but_samples_are_not() {
        let p = MotionProfile::new(
            ProfileKind::ConstantAccel {
                accel: Vector3::new(2.0, 0.0, 0.0),
            },
            1.0,
            100.0,
        );
        assert!(generate_samples(&p).is_ok());
        match generate(&p, &RelativityConfig::default()) {
            Err(SimError::SuperluminalTruth { t, .. }) => assert_abs_diff_eq!(t, 0.5, epsilon = 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_profiles() {
        let bad = [
            MotionProfile::new(ProfileKind::Rest, 0.0, 100.0),
            MotionProfile::new(ProfileKind::Rest, 1.0, -1.0),
            MotionProfile::new(ProfileKind::Circle { radius: 0.0, period: 1.0 }, 1.0, 10.0),
            MotionProfile::new(
                ProfileKind::Sinusoid {
                    amplitude: Vector3::x(),
                    period: f64::NAN,
                },
                1.0,
                10.0,
            ),
        ];
        for p in bad {
            assert!(matches!(generate_samples(&p), Err(SimError::InvalidProfile(_))), "{p:?}");
        }
    }

    #[test]
    fn drift_examples() {
        let p = MotionProfile::new(
            ProfileKind::ConstantAccel {
                accel: Vector3::new(0.2, 0.1, 0.0),
            },
            1.0,
            20.0,
        );
        let (_, truth) = generate(&p, &RelativityConfig::default()).unwrap();
        assert_eq!(drift_report(&truth, &truth).unwrap(), DriftReport::default());
        let shifted: Vec<_> = truth
            .iter()
            .map(|pt| TrajectoryPoint {
                chi: pt.chi + FourVector::new(0.0, 1.0, 0.0, 0.0),
                ..*pt
            })
            .collect();
        let r = drift_report(&truth, &shifted).unwrap();
        assert_abs_diff_eq!(r.final_position_error, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.max_position_error, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.rms_position_error, 1.0, epsilon = 1e-12);
        assert!(matches!(
            drift_report(&truth[1..], &truth),
            Err(SimError::LengthMismatch { .. })
        ));
    }
}
