//! Full pipeline on a constant-acceleration run compared with closed form.

use schlingel::core4d::{RelativityConfig, Vector3};
use schlingel::pipeline::{run, PipelineConfig};
use schlingel::sim::{generate, MotionProfile, ProfileKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = 0.2;
    let profile = MotionProfile::new(ProfileKind::ConstantAccel { accel: Vector3::new(a, 0.0, 0.0) }, 1.0, 1000.0);
    let (samples, truth) = generate(&profile, &RelativityConfig::default())?;
    let trajectory = run(&samples, &PipelineConfig::default())?;

    println!("{:>5} {:>12} {:>12} {:>12} {:>12}", "t", "x", "x exact", "zeta", "gamma");
    for (p, t) in trajectory.iter().zip(&truth).step_by(200) {
        println!("{:>5.2} {:>12.9} {:>12.9} {:>12.9} {:>12.9}", p.t, p.chi.x, t.chi.x, p.chi.zeta, p.gamma);
    }
    let last = trajectory.last().unwrap();
    println!("final x {:.12} (½at² = {:.12})", last.chi.x, 0.5 * a);
    println!("final gamma {:.12} (1/√0.96 = {:.12})", last.gamma, 1.0 / 0.96f64.sqrt());
    Ok(())
}
