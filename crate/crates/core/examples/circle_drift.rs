//! Drift of a circular run with and without sensor noise.

use schlingel::core4d::RelativityConfig;
use schlingel::pipeline::{run, PipelineConfig};
use schlingel::sim::{drift_report, generate, MotionProfile, NoiseSigma, ProfileKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let clean = MotionProfile::new(ProfileKind::Circle { radius: 1.0, period: 10.0 }, 10.0, 1000.0);
    let noisy = clean.with_noise(NoiseSigma { accel: 0.02, gyro: 0.005, mag: 0.5 }, 7);
    for (label, profile) in [("noiseless", clean), ("noisy", noisy)] {
        let (samples, truth) = generate(&profile, &RelativityConfig::default())?;
        let config = PipelineConfig { initial_state: profile.initial_state(), ..PipelineConfig::default() };
        let estimate = run(&samples, &config)?;
        let r = drift_report(&estimate, &truth)?;
        println!(
            "{label:>9}: final {:.3e} m, max {:.3e} m, rms {:.3e} m, heading {:.3e} rad",
            r.final_position_error, r.max_position_error, r.rms_position_error, r.heading_error
        );
    }
    Ok(())
}
