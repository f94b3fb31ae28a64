//! Trajectory CSV and PLY export with velocity arrows.

use schlingel::core4d::{RelativityConfig, Vector3};
use schlingel::maps::{export_trajectory, parse_trajectory_csv, ExportFormat};
use schlingel::pipeline::{run, PipelineConfig};
use schlingel::sim::{generate, MotionProfile, ProfileKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let profile = MotionProfile::new(
        ProfileKind::Sinusoid { amplitude: Vector3::new(0.2, 0.1, 0.0), period: 4.0 },
        4.0,
        20.0,
    );
    let (samples, _) = generate(&profile, &RelativityConfig::default())?;
    let trajectory = run(&samples, &PipelineConfig::default())?;

    let csv = export_trajectory(&trajectory, ExportFormat::Csv, 1.0)?;
    let ply = export_trajectory(&trajectory, ExportFormat::Ply, 0.25)?;
    let dir = std::env::temp_dir();
    std::fs::write(dir.join("schlingel_trajectory.csv"), &csv)?;
    std::fs::write(dir.join("schlingel_trajectory.ply"), &ply)?;

    let text = String::from_utf8(ply)?;
    for line in text.lines().take(14) {
        println!("{line}");
    }
    let back = parse_trajectory_csv(std::str::from_utf8(&csv)?)?;
    println!("... {} vertices; CSV re-read {} points into {}", trajectory.len(), back.len(), dir.display());
    Ok(())
}
