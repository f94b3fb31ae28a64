//! IMU stream to four-vector trajectory.
//!
//! Per step `n` (from sample `n-1` to sample `n`):
//!
//! 1. both samples are taken to the world frame and gravity is removed;
//! 2. velocity, translation and angles advance by one trapezoidal step;
//! 3. `τ_Γ = Γ(|v_{n-1}|) - 1` is computed from the *previous* velocity;
//! 4. the temporal coordinate is `ζ = τ_Γ·‖T_n - T_0‖` (cumulative mode) or
//!    `ζ_{n-1} + τ_Γ·‖T_n - T_{n-1}‖` (incremental mode);
//! 5. primed angles are the spatial angles scaled by `1 + τ_Γ`.
//!
//! Primed angles are reported only; they are not fed back into the next step.

use thiserror::Error;

use crate::core4d::{
    lorentz_factor, lorentz_scale, primed_angles, temporal_translation, Core4dError, EulerAngles,
    FourVector, Pose4D, PrimedAngles, RelativityConfig, RotationOrder, Vector3,
};
use crate::frames::FrameChain;
use crate::strapdown::{self, CorrectionTerms, ImuSample, KinematicState, StrapdownError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("SuperluminalSpeed at t = {t} s: speed {speed} m/s reaches the limit {limit} m/s")]
    SuperluminalSpeed { t: f64, speed: f64, limit: f64 },
    #[error("NonMonotonicTime: sample {index} at t = {t} s does not follow t = {previous} s")]
    NonMonotonicTime { index: usize, previous: f64, t: f64 },
    #[error("EmptyDataset: no samples to integrate")]
    EmptyDataset,
    #[error("TooFewSamples: need at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("non-finite value in {what} at t = {t} s")]
    NonFinite { what: &'static str, t: f64 },
    #[error("InconsistentPoint at t = {t} s: {reason}")]
    InconsistentPoint { t: f64, reason: String },
    #[error("invalid pipeline config: {0}")]
    InvalidConfig(String),
}

/// How the temporal translation is accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZetaMode {
    /// `ζ_n = τ_Γ·‖T_n - T_0‖`
    #[default]
    Cumulative,
    /// `ζ_n = ζ_{n-1} + τ_Γ·‖T_n - T_{n-1}‖`
    Incremental,
}

/// Which acceleration feeds the look-ahead translation term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailSource {
    /// Raw sensor-frame linear acceleration.
    #[default]
    Raw,
    /// World-frame, gravity- and bias-corrected acceleration.
    Corrected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub relativity: RelativityConfig,
    pub corrections: CorrectionTerms,
    pub rotation_order: RotationOrder,
    /// Starting velocity, translation and angles; its `t` is replaced by the
    /// first sample's timestamp.
    pub initial_state: KinematicState,
    pub frame_chain: FrameChain,
    /// Look-ahead window in seconds for the tail translation term; 0 disables it.
    pub tail_window: f64,
    pub tail_source: TailSource,
    pub zeta_mode: ZetaMode,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            relativity: RelativityConfig::default(),
            corrections: CorrectionTerms::default(),
            rotation_order: RotationOrder::default(),
            initial_state: KinematicState::default(),
            frame_chain: FrameChain::default(),
            tail_window: 0.0,
            tail_source: TailSource::Raw,
            zeta_mode: ZetaMode::Cumulative,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        if !(self.tail_window.is_finite() && self.tail_window >= 0.0) {
            return Err(PipelineError::InvalidConfig(format!(
                "tail_window must be finite and >= 0, got {}",
                self.tail_window
            )));
        }
        let c = &self.corrections;
        if !c
            .accel_bias
            .iter()
            .chain(c.velocity_correction.iter())
            .all(|v| v.is_finite())
        {
            return Err(PipelineError::InvalidConfig("corrections must be finite".into()));
        }
        if !self.initial_state.is_finite() {
            return Err(PipelineError::InvalidConfig("initial state must be finite".into()));
        }
        Ok(())
    }
}

/// One output sample of the trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub chi: FourVector,
    pub velocity: Vector3,
    /// `‖velocity‖`
    pub speed: f64,
    /// `Γ(speed)`
    pub gamma: f64,
    /// Boost scalar used for this point's `ζ` and primed angles (taken from
    /// the previous step's velocity).
    pub tau_gamma: f64,
    pub angles: EulerAngles,
    pub primed: PrimedAngles,
}

impl TrajectoryPoint {
    pub fn is_finite(&self) -> bool {
        self.t.is_finite()
            && self.chi.is_finite()
            && self.velocity.iter().all(|c| c.is_finite())
            && self.speed.is_finite()
            && self.gamma.is_finite()
            && self.tau_gamma.is_finite()
            && self.angles.is_finite()
            && self.primed.is_finite()
    }

    /// The point as a 10-DoF pose.
    pub fn pose(&self, order: RotationOrder) -> Pose4D {
        Pose4D::new(self.angles, self.primed, self.chi).with_order(order)
    }

    pub fn four_position(&self) -> Result<FourVector, PipelineError> {
        four_position(self)
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Returns `χ` after re-checking the point's internal consistency.
pub fn four_position(point: &TrajectoryPoint) -> Result<FourVector, PipelineError> {
    const TOL: f64 = 1e-9;
    let fail = |reason: String| {
        Err(PipelineError::InconsistentPoint {
            t: point.t,
            reason,
        })
    };
    if !point.is_finite() {
        return fail("non-finite component".into());
    }
    if !close(point.speed, point.velocity.norm(), TOL) {
        return fail(format!(
            "speed {} differs from |velocity| {}",
            point.speed,
            point.velocity.norm()
        ));
    }
    if point.gamma < 1.0 || (point.speed == 0.0 && point.gamma != 1.0) {
        return fail(format!("Lorentz factor {} is invalid", point.gamma));
    }
    if point.tau_gamma < 0.0 {
        return fail(format!("tau_gamma {} is negative", point.tau_gamma));
    }
    if point.chi.zeta < 0.0 {
        return fail(format!("zeta {} is negative", point.chi.zeta));
    }
    let expected = primed_angles(&point.angles, point.tau_gamma);
    let primed_ok = close(point.primed.psi_p, expected.psi_p, TOL)
        && close(point.primed.theta_p, expected.theta_p, TOL)
        && close(point.primed.phi_p, expected.phi_p, TOL);
    if !primed_ok {
        return fail("primed angles do not match angles·(1 + tau_gamma)".into());
    }
    Ok(point.chi)
}

/// Step-by-step trajectory producer.
///
/// Yields one point per input sample. After the first error the iterator is
/// exhausted, so every point it has produced is finite.
pub struct Integrator<'a> {
    raw: &'a [ImuSample],
    world: Vec<ImuSample>,
    config: &'a PipelineConfig,
    index: usize,
    state: KinematicState,
    zeta: f64,
    failed: bool,
}

impl<'a> Integrator<'a> {
    pub fn new(samples: &'a [ImuSample], config: &'a PipelineConfig) -> Result<Self, PipelineError> {
        config.validate()?;
        match samples.len() {
            0 => return Err(PipelineError::EmptyDataset),
            1 => return Err(PipelineError::TooFewSamples(1)),
            _ => {}
        }
        for (index, s) in samples.iter().enumerate() {
            if !s.is_finite() {
                return Err(PipelineError::NonFinite {
                    what: "input sample",
                    t: s.t,
                });
            }
            if index > 0 && s.t <= samples[index - 1].t {
                return Err(PipelineError::NonMonotonicTime {
                    index,
                    previous: samples[index - 1].t,
                    t: s.t,
                });
            }
        }
        let world = samples.iter().map(|s| config.frame_chain.apply(s)).collect();
        let state = KinematicState {
            t: samples[0].t,
            ..config.initial_state
        };
        Ok(Self {
            raw: samples,
            world,
            config,
            index: 0,
            state,
            zeta: 0.0,
            failed: false,
        })
    }

    fn gamma(&self, velocity: &Vector3, t: f64) -> Result<f64, PipelineError> {
        let speed = velocity.norm();
        lorentz_factor(speed, &self.config.relativity).map_err(|e| match e {
            Core4dError::SuperluminalSpeed { speed, limit, .. } => {
                PipelineError::SuperluminalSpeed { t, speed, limit }
            }
            _ => PipelineError::NonFinite { what: "speed", t },
        })
    }

    fn tail_term(&self, n: usize, dt: f64) -> Vector3 {
        let window = self.config.tail_window;
        if window == 0.0 {
            return Vector3::zeros();
        }
        let t_n = self.world[n].t;
        let end = t_n + window;
        let last = self.world[n..].partition_point(|s| s.t < end).min(self.world.len() - n - 1);
        let span = &self.world[n..=n + last];
        let times: Vec<f64> = span.iter().map(|s| s.t).collect();
        let values: Vec<Vector3> = match self.config.tail_source {
            TailSource::Raw => self.raw[n..=n + last].iter().map(|s| s.accel).collect(),
            TailSource::Corrected => span
                .iter()
                .map(|s| s.accel - self.config.corrections.accel_bias)
                .collect(),
        };
        strapdown::integrate_between(&times, &values, t_n, end) * dt
    }

    fn initial_point(&mut self) -> Result<TrajectoryPoint, PipelineError> {
        let s = self.state;
        let gamma = self.gamma(&s.velocity, s.t)?;
        let tau = lorentz_scale(gamma).unwrap_or(0.0);
        Ok(TrajectoryPoint {
            t: s.t,
            chi: FourVector::from_parts(0.0, s.translation),
            velocity: s.velocity,
            speed: s.velocity.norm(),
            gamma,
            tau_gamma: tau,
            angles: s.angles,
            primed: primed_angles(&s.angles, tau),
        })
    }

    fn advance(&mut self, n: usize) -> Result<TrajectoryPoint, PipelineError> {
        let prev = self.state;
        let gamma_prev = self.gamma(&prev.velocity, prev.t)?;
        let tau = lorentz_scale(gamma_prev).unwrap_or(0.0);

        let mut next = strapdown::step(
            &prev,
            &self.world[n],
            &self.world[n - 1],
            &self.config.corrections,
        )
        .map_err(|e| match e {
            StrapdownError::NonMonotonicTime { previous, t, .. } => {
                PipelineError::NonMonotonicTime { index: n, previous, t }
            }
            other => PipelineError::InvalidConfig(other.to_string()),
        })?;
        next.translation += self.tail_term(n, next.t - prev.t);
        if !next.is_finite() {
            return Err(PipelineError::NonFinite {
                what: "integration state",
                t: next.t,
            });
        }

        let gamma = self.gamma(&next.velocity, next.t)?;
        self.zeta = match self.config.zeta_mode {
            ZetaMode::Cumulative => temporal_translation(
                &(next.translation - self.config.initial_state.translation),
                tau,
            ),
            ZetaMode::Incremental => {
                self.zeta + temporal_translation(&(next.translation - prev.translation), tau)
            }
        };
        self.state = next;
        let point = TrajectoryPoint {
            t: next.t,
            chi: FourVector::from_parts(self.zeta, next.translation),
            velocity: next.velocity,
            speed: next.velocity.norm(),
            gamma,
            tau_gamma: tau,
            angles: next.angles,
            primed: primed_angles(&next.angles, tau),
        };
        if !point.is_finite() {
            return Err(PipelineError::NonFinite {
                what: "trajectory point",
                t: point.t,
            });
        }
        Ok(point)
    }
}

impl Iterator for Integrator<'_> {
    type Item = Result<TrajectoryPoint, PipelineError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.index >= self.world.len() {
            return None;
        }
        let n = self.index;
        self.index += 1;
        let result = if n == 0 {
            self.initial_point()
        } else {
            self.advance(n)
        };
        if result.is_err() {
            self.failed = true;
        }
        Some(result)
    }
}

/// Integrates a full dataset into a trajectory with one point per sample.
pub fn run(
    samples: &[ImuSample],
    config: &PipelineConfig,
) -> Result<Vec<TrajectoryPoint>, PipelineError> {
    Integrator::new(samples, config)?.collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn uniform(rate: f64, duration: f64, f: impl Fn(f64) -> (Vector3, Vector3)) -> Vec<ImuSample> {
        let n = (duration * rate).round() as usize;
        (0..=n)
            .map(|k| {
                let t = k as f64 / rate;
                let (a, w) = f(t);
                ImuSample::new(t, a, w, Vector3::new(20.0, 0.0, -40.0))
            })
            .collect()
    }

    #[test]
    fn static_input_stays_at_origin() {
        let s = uniform(100.0, 1.0, |_| (Vector3::zeros(), Vector3::zeros()));
        let traj = run(&s, &PipelineConfig::default()).unwrap();
        assert_eq!(traj.len(), s.len());
        for p in &traj {
            assert_eq!(p.chi, FourVector::ZERO);
            assert_eq!(p.gamma, 1.0);
            assert_eq!(p.angles, EulerAngles::ZERO);
        }
    }

    /// Independent fine-step recurrence implementing the velocity, translation,
    /// Lorentz factor and temporal translation formulas directly.
    fn fine_constant_accel(a: f64, rate: f64, duration: f64) -> (f64, f64, f64) {
        let n = (duration * rate).round() as usize;
        let h = 1.0 / rate;
        let (mut v, mut x, mut zeta) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..n {
            let tau = 1.0 / (1.0 - v * v).sqrt() - 1.0;
            let v_next = v + a * h;
            x += 0.5 * (v + v_next) * h;
            v = v_next;
            zeta = tau * x.abs();
        }
        (v, x, zeta)
    }

    #[test]
    fn constant_accel_matches_reference() {
        let s = uniform(100.0, 1.0, |_| (Vector3::new(0.2, 0.0, 0.0), Vector3::zeros()));
        let traj = run(&s, &PipelineConfig::default()).unwrap();
        let last = traj.last().unwrap();
        let (v, x, zeta) = fine_constant_accel(0.2, 100.0, 1.0);
        assert_abs_diff_eq!(last.velocity.x, v, epsilon = 1e-12);
        assert_abs_diff_eq!(last.chi.x, x, epsilon = 1e-12);
        assert_abs_diff_eq!(last.chi.zeta, zeta, epsilon = 1e-12);
        assert_abs_diff_eq!(last.gamma, 1.0 / (0.96f64).sqrt(), epsilon = 1e-9);
        assert_abs_diff_eq!(last.chi.x, 0.1, epsilon = 1e-12);
        // Γ is taken from v(0.99 s) = 0.198 for the final ζ
        let tau = 1.0 / (1.0 - 0.198f64 * 0.198).sqrt() - 1.0;
        assert_abs_diff_eq!(last.chi.zeta, tau * 0.1, epsilon = 1e-12);
    }

    #[test]
    fn pure_rotation() {
        let s = uniform(100.0, 2.0, |_| (Vector3::zeros(), Vector3::new(0.0, 0.0, FRAC_PI_2)));
        let traj = run(&s, &PipelineConfig::default()).unwrap();
        let last = traj.last().unwrap();
        assert_abs_diff_eq!(last.angles.psi, PI, epsilon = 1e-12);
        assert_eq!(last.chi, FourVector::ZERO);
        assert_eq!(last.primed.psi_p, last.angles.psi);
    }

    #[test]
    fn superluminal_names_timestamp() {
        let s = uniform(100.0, 1.0, |_| (Vector3::new(2.0, 0.0, 0.0), Vector3::zeros()));
        let mut produced = Vec::new();
        let mut error = None;
        for r in Integrator::new(&s, &PipelineConfig::default()).unwrap() {
            match r {
                Ok(p) => produced.push(p),
                Err(e) => error = Some(e),
            }
        }
        match error {
            Some(PipelineError::SuperluminalSpeed { t, .. }) => assert_abs_diff_eq!(t, 0.5, epsilon = 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(produced.len(), 50);
        assert!(produced.iter().all(TrajectoryPoint::is_finite));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(run(&[], &PipelineConfig::default()), Err(PipelineError::EmptyDataset));
        let one = [ImuSample::at_rest(0.0)];
        assert_eq!(run(&one, &PipelineConfig::default()), Err(PipelineError::TooFewSamples(1)));
        let back = [ImuSample::at_rest(0.0), ImuSample::at_rest(0.2), ImuSample::at_rest(0.1)];
        assert!(matches!(
            run(&back, &PipelineConfig::default()),
            Err(PipelineError::NonMonotonicTime { index: 2, .. })
        ));
        let mut nan = [ImuSample::at_rest(0.0), ImuSample::at_rest(0.1)];
        nan[1].accel.x = f64::NAN;
        assert!(matches!(
            run(&nan, &PipelineConfig::default()),
            Err(PipelineError::NonFinite { .. })
        ));
    }

    #[test]
    fn incremental_mode_accumulates() {
        let s = uniform(100.0, 1.0, |_| (Vector3::new(0.2, 0.0, 0.0), Vector3::zeros()));
        let cfg = PipelineConfig {
            zeta_mode: ZetaMode::Incremental,
            ..PipelineConfig::default()
        };
        let traj = run(&s, &cfg).unwrap();
        let mut zeta = 0.0;
        for w in traj.windows(2) {
            zeta += w[1].tau_gamma * (w[1].chi.spatial() - w[0].chi.spatial()).norm();
            assert_abs_diff_eq!(w[1].chi.zeta, zeta, epsilon = 1e-15);
            assert!(w[1].chi.zeta >= w[0].chi.zeta);
        }
    }

    #[test]
    fn tail_window_adds_look_ahead() {
        // raw accel 0.5 m/s² along y; frame chain empty so a_cor = a_lin
        let s = uniform(10.0, 1.0, |_| (Vector3::new(0.0, 0.5, 0.0), Vector3::zeros()));
        let base = run(&s, &PipelineConfig::default()).unwrap();
        let cfg = PipelineConfig {
            tail_window: 0.2,
            ..PipelineConfig::default()
        };
        let with_tail = run(&s, &cfg).unwrap();
        // first step: dt = 0.1, tail = ∫_{0.1}^{0.3} 0.5 dt = 0.1
        let extra = with_tail[1].chi.y - base[1].chi.y;
        assert_abs_diff_eq!(extra, 0.1 * 0.1, epsilon = 1e-12);
        // last step: the look-ahead is clipped at the end of the data
        let n = s.len() - 1;
        let delta_last = (with_tail[n].chi.y - with_tail[n - 1].chi.y)
            - (base[n].chi.y - base[n - 1].chi.y);
        assert_abs_diff_eq!(delta_last, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn four_position_checks_invariants() {
        let s = uniform(100.0, 0.5, |_| (Vector3::new(0.2, 0.1, 0.0), Vector3::new(0.0, 0.0, 0.3)));
        let traj = run(&s, &PipelineConfig::default()).unwrap();
        for p in &traj {
            assert_eq!(four_position(p).unwrap(), p.chi);
        }
        let mut bad = traj[10];
        bad.speed += 0.1;
        assert!(matches!(four_position(&bad), Err(PipelineError::InconsistentPoint { .. })));
        let mut bad = traj[10];
        bad.primed.psi_p += 0.1;
        assert!(four_position(&bad).is_err());
    }

    #[test]
    fn four_position_single_step_arithmetic() {
        let p = TrajectoryPoint {
            t: 1.0,
            chi: FourVector::new(temporal_translation(&Vector3::new(3.0, 4.0, 0.0), 0.25), 3.0, 4.0, 0.0),
            velocity: Vector3::zeros(),
            speed: 0.0,
            gamma: 1.0,
            tau_gamma: 0.25,
            angles: EulerAngles::ZERO,
            primed: PrimedAngles::ZERO,
        };
        assert_eq!(four_position(&p).unwrap().zeta, 1.25);
    }
}
