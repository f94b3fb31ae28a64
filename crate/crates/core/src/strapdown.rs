//! Discrete-time strapdown integration of IMU streams.
//!
//! All quadrature is trapezoidal, which is exact for constant and linear
//! integrands and second order otherwise. Velocity and translation are
//! integrated per axis; angles follow the plane naming of [`EulerAngles`]:
//! `ω_z -> ψ`, `ω_y -> θ`, `ω_x -> φ`.

use thiserror::Error;

use crate::core4d::{EulerAngles, Vector3};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StrapdownError {
    #[error("NonMonotonicTime: t = {t} at index {index} does not follow t = {previous}")]
    NonMonotonicTime { index: usize, previous: f64, t: f64 },
    #[error("TooFewSamples: need at least 2 samples, got {found}")]
    TooFewSamples { found: usize },
    #[error("invalid integration window: {0}")]
    InvalidWindow(String),
}

/// One timestamped IMU reading: acceleration in m/s², angular rate in rad/s
/// and magnetic field in µT.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImuSample {
    pub t: f64,
    pub accel: Vector3,
    pub gyro: Vector3,
    pub mag: Vector3,
}

impl ImuSample {
    pub fn new(t: f64, accel: Vector3, gyro: Vector3, mag: Vector3) -> Self {
        Self {
            t,
            accel,
            gyro,
            mag,
        }
    }

    /// A sample with zero acceleration, rate and field at time `t`.
    pub fn at_rest(t: f64) -> Self {
        Self::new(t, Vector3::zeros(), Vector3::zeros(), Vector3::zeros())
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite()
            && [self.accel, self.gyro, self.mag]
                .iter()
                .all(|v| v.iter().all(|c| c.is_finite()))
    }
}

/// A 3-vector value at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimedVector {
    pub t: f64,
    pub value: Vector3,
}

impl TimedVector {
    pub fn new(t: f64, value: Vector3) -> Self {
        Self { t, value }
    }
}

/// Acceleration pair used by [`integrate_translation`]: the corrected
/// world-frame acceleration and the raw linear acceleration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelSample {
    pub t: f64,
    pub a_cor: Vector3,
    pub a_lin: Vector3,
}

/// Bias and velocity corrections applied during integration.
///
/// `accel_bias` is subtracted from every world-frame acceleration;
/// `velocity_correction` is added once per integration window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionTerms {
    pub accel_bias: Vector3,
    pub velocity_correction: Vector3,
}

impl Default for CorrectionTerms {
    fn default() -> Self {
        Self {
            accel_bias: Vector3::zeros(),
            velocity_correction: Vector3::zeros(),
        }
    }
}

/// Integration state carried from one step to the next.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicState {
    pub t: f64,
    pub velocity: Vector3,
    pub translation: Vector3,
    pub angles: EulerAngles,
}

impl Default for KinematicState {
    fn default() -> Self {
        Self {
            t: 0.0,
            velocity: Vector3::zeros(),
            translation: Vector3::zeros(),
            angles: EulerAngles::ZERO,
        }
    }
}

impl KinematicState {
    pub fn is_finite(&self) -> bool {
        self.t.is_finite()
            && self.velocity.iter().all(|c| c.is_finite())
            && self.translation.iter().all(|c| c.is_finite())
            && self.angles.is_finite()
    }
}

#[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN times
fn check_times<I: IntoIterator<Item = f64>>(times: I, min_len: usize) -> Result<(), StrapdownError> {
    let mut count = 0;
    let mut previous = f64::NEG_INFINITY;
    for (index, t) in times.into_iter().enumerate() {
        if !(t > previous) {
            return Err(StrapdownError::NonMonotonicTime { index, previous, t });
        }
        previous = t;
        count += 1;
    }
    if count < min_len {
        return Err(StrapdownError::TooFewSamples { found: count });
    }
    Ok(())
}

#[inline]
fn trapezoid(a: &Vector3, b: &Vector3, dt: f64) -> Vector3 {
    (a + b) * (0.5 * dt)
}

/// Running trapezoidal integral, starting at zero on the first timestamp.
fn cumulative(times: &[f64], values: &[Vector3]) -> Vec<Vector3> {
    let mut acc = Vector3::zeros();
    let mut out = Vec::with_capacity(values.len());
    out.push(acc);
    for k in 1..values.len() {
        acc += trapezoid(&values[k - 1], &values[k], times[k] - times[k - 1]);
        out.push(acc);
    }
    out
}

fn interpolate(times: &[f64], values: &[Vector3], t: f64) -> Vector3 {
    let k = times.partition_point(|&s| s <= t);
    if k == 0 {
        return values[0];
    }
    if k == times.len() {
        return values[k - 1];
    }
    let (t0, t1) = (times[k - 1], times[k]);
    let w = (t - t0) / (t1 - t0);
    values[k - 1] * (1.0 - w) + values[k] * w
}

/// Trapezoidal integral of the piecewise-linear interpolant over `[from, to]`,
/// clipped to the sampled range.
pub(crate) fn integrate_between(times: &[f64], values: &[Vector3], from: f64, to: f64) -> Vector3 {
    let mut total = Vector3::zeros();
    if times.is_empty() || to <= from {
        return total;
    }
    let lo = from.max(times[0]);
    let hi = to.min(times[times.len() - 1]);
    if hi <= lo {
        return total;
    }
    let mut t_prev = lo;
    let mut v_prev = interpolate(times, values, lo);
    for (k, &t) in times.iter().enumerate() {
        if t <= lo {
            continue;
        }
        if t >= hi {
            break;
        }
        total += trapezoid(&v_prev, &values[k], t - t_prev);
        t_prev = t;
        v_prev = values[k];
    }
    total += trapezoid(&v_prev, &interpolate(times, values, hi), hi - t_prev);
    total
}

/// Cumulative velocity change `Δv(t_k) = ∫_{t₀}^{t_k} a_cor dt`.
///
/// The returned sequence has one entry per sample; the velocity correction
/// is added once, to the final entry.
pub fn integrate_velocity(
    samples: &[TimedVector],
    corrections: &CorrectionTerms,
) -> Result<Vec<TimedVector>, StrapdownError> {
    check_times(samples.iter().map(|s| s.t), 2)?;
    let times: Vec<f64> = samples.iter().map(|s| s.t).collect();
    let accel: Vec<Vector3> = samples
        .iter()
        .map(|s| s.value - corrections.accel_bias)
        .collect();
    let mut out: Vec<TimedVector> = cumulative(&times, &accel)
        .into_iter()
        .zip(&times)
        .map(|(dv, &t)| TimedVector::new(t, dv))
        .collect();
    if let Some(last) = out.last_mut() {
        last.value += corrections.velocity_correction;
    }
    Ok(out)
}

/// Translation over a window that starts at rest relative to its first sample.
///
/// With `tail_window = Δ`, the main window is `[t₀, tₙ]` where
/// `tₙ = t_last - Δ`, and
///
/// ```text
/// ΔT = ∬_{t₀}^{tₙ} a_cor dt dt + Δt·∫_{tₙ}^{tₙ+Δ} a_lin dt + (Δt/2)·Δv_cor
/// ```
///
/// with `Δt = tₙ - t₀`. Samples are linearly interpolated at `tₙ` when it
/// falls between timestamps. `Δ = 0` drops the middle term.
pub fn integrate_translation(
    samples: &[AccelSample],
    corrections: &CorrectionTerms,
    tail_window: f64,
) -> Result<Vector3, StrapdownError> {
    check_times(samples.iter().map(|s| s.t), 2)?;
    if !(tail_window.is_finite() && tail_window >= 0.0) {
        return Err(StrapdownError::InvalidWindow(format!(
            "tail window must be finite and >= 0, got {tail_window}"
        )));
    }
    let times: Vec<f64> = samples.iter().map(|s| s.t).collect();
    let t0 = times[0];
    let t_last = times[times.len() - 1];
    let t_split = t_last - tail_window;
    if t_split <= t0 {
        return Err(StrapdownError::InvalidWindow(format!(
            "tail window {tail_window} s leaves no main window in [{t0}, {t_last}]"
        )));
    }

    let a_cor: Vec<Vector3> = samples
        .iter()
        .map(|s| s.a_cor - corrections.accel_bias)
        .collect();
    let a_lin: Vec<Vector3> = samples.iter().map(|s| s.a_lin).collect();

    let mut win_t: Vec<f64> = times.iter().copied().take_while(|&t| t < t_split).collect();
    let mut win_a: Vec<Vector3> = a_cor[..win_t.len()].to_vec();
    win_a.push(interpolate(&times, &a_cor, t_split));
    win_t.push(t_split);

    let velocity = cumulative(&win_t, &win_a);
    let double = cumulative(&win_t, &velocity)
        .last()
        .copied()
        .unwrap_or_else(Vector3::zeros);

    let dt = t_split - t0;
    let tail = integrate_between(&times, &a_lin, t_split, t_last);
    Ok(double + tail * dt + corrections.velocity_correction * (0.5 * dt))
}

/// Angle increment from angular rates: `ω_z -> ψ`, `ω_y -> θ`, `ω_x -> φ`.
pub fn integrate_angle(samples: &[TimedVector]) -> Result<EulerAngles, StrapdownError> {
    check_times(samples.iter().map(|s| s.t), 2)?;
    let times: Vec<f64> = samples.iter().map(|s| s.t).collect();
    let rates: Vec<Vector3> = samples.iter().map(|s| s.value).collect();
    let total = cumulative(&times, &rates)
        .last()
        .copied()
        .unwrap_or_else(Vector3::zeros);
    Ok(rates_to_angles(&total))
}

fn rates_to_angles(w: &Vector3) -> EulerAngles {
    EulerAngles::new(w.z, w.y, w.x)
}

/// One trapezoidal update between `prev_sample` and `sample`.
///
/// Both samples must already be expressed in the world frame. The step
/// interval counts as one integration window, so the velocity correction is
/// applied once here.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN times
pub fn step(
    state: &KinematicState,
    sample: &ImuSample,
    prev_sample: &ImuSample,
    corrections: &CorrectionTerms,
) -> Result<KinematicState, StrapdownError> {
    if !(sample.t > prev_sample.t) {
        return Err(StrapdownError::NonMonotonicTime {
            index: 1,
            previous: prev_sample.t,
            t: sample.t,
        });
    }
    let dt = sample.t - prev_sample.t;
    let a0 = prev_sample.accel - corrections.accel_bias;
    let a1 = sample.accel - corrections.accel_bias;
    let velocity = state.velocity + trapezoid(&a0, &a1, dt) + corrections.velocity_correction;
    let translation = state.translation + trapezoid(&state.velocity, &velocity, dt);
    let dw = trapezoid(&prev_sample.gyro, &sample.gyro, dt);
    Ok(KinematicState {
        t: sample.t,
        velocity,
        translation,
        angles: state.angles + rates_to_angles(&dw),
    })
}
