//! Trapezoidal integration of acceleration and angular rate.

use std::f64::consts::PI;

use schlingel::core4d::Vector3;
use schlingel::strapdown::{integrate_angle, integrate_translation, integrate_velocity, AccelSample, CorrectionTerms, TimedVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rate = 1000.0;
    let n = (PI * rate).round() as usize;
    let times: Vec<f64> = (0..=n).map(|k| PI * k as f64 / n as f64).collect();

    let accel: Vec<_> = times.iter().map(|&t| TimedVector::new(t, Vector3::new(t.sin(), 0.0, 0.0))).collect();
    let velocity = integrate_velocity(&accel, &CorrectionTerms::default())?;
    println!("∫ sin t dt over [0, π] = {:.9} (exact 2)", velocity.last().unwrap().value.x);

    let lin: Vec<_> = times
        .iter()
        .map(|&t| AccelSample { t, a_cor: Vector3::new(0.0, 1.0, 0.0), a_lin: Vector3::new(0.0, 1.0, 0.0) })
        .collect();
    let corrections = CorrectionTerms { accel_bias: Vector3::new(0.0, 0.1, 0.0), ..CorrectionTerms::default() };
    let translation = integrate_translation(&lin, &corrections, 0.0)?;
    println!("translation under 0.9 m/s² for π s = {:.6} m (exact {:.6})", translation.y, 0.45 * PI * PI);

    let gyro: Vec<_> = times.iter().map(|&t| TimedVector::new(t, Vector3::new(0.0, 0.0, 0.5))).collect();
    let angles = integrate_angle(&gyro)?;
    println!("yaw after π s at 0.5 rad/s = {:.9} rad", angles.psi);
    Ok(())
}
