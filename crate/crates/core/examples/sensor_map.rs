//! Sensor map of a run that speeds up halfway, written as a PPM.

use schlingel::core4d::Vector3;
use schlingel::maps::{cells_csv, render_sensor_map, ColorRamp, GridConfig};
use schlingel::pipeline::{run, PipelineConfig};
use schlingel::strapdown::{ImuSample, KinematicState};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples: Vec<_> = (0..=1200)
        .map(|k| {
            let t = k as f64 / 100.0;
            let a = if (6.0..7.0).contains(&t) { Vector3::new(0.0, 0.3, 0.0) } else { Vector3::zeros() };
            ImuSample::new(t, a, Vector3::zeros(), Vector3::zeros())
        })
        .collect();
    let config = PipelineConfig {
        initial_state: KinematicState { velocity: Vector3::new(0.1, 0.0, 0.0), ..KinematicState::default() },
        ..PipelineConfig::default()
    };
    let trajectory = run(&samples, &config)?;

    let ramp = ColorRamp::new(vec![(0.0, [0, 0, 255]), (0.2, [128, 255, 0]), (0.4, [255, 0, 0])], 0)?;
    let grid = GridConfig { cell_size: 0.05, ..GridConfig::default() };
    let (cells, ppm) = render_sensor_map(&trajectory, &grid, &ramp)?;

    let path = std::env::temp_dir().join("schlingel_sensor_map.ppm");
    std::fs::write(&path, &ppm)?;
    println!("{}x{} map, {} points binned, written to {}", cells.width, cells.height, cells.total_count(), path.display());
    for line in cells_csv(&cells).lines().filter(|l| l.split(',').nth(4) != Some("0")).take(8) {
        println!("{line}");
    }
    Ok(())
}
