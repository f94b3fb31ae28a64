//! Dataset CSV and key=value config round trip, then integration.

use schlingel::config::Config;
use schlingel::dataset::{parse_dataset, serialize_dataset};
use schlingel::pipeline::run;
use schlingel::sim::generate_samples;

const CONFIG: &str = "\
# simulated circle, already world-frame
profile = circle
radius = 0.5
period = 8
duration = 8
rate = 100
noise_gyro = 0.001
seed = 11
initial_velocity = 0 0.392699082 0
zeta_mode = incremental
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config: Config = CONFIG.parse()?;
    let profile = config.profile.expect("profile key present");
    let text = serialize_dataset(&generate_samples(&profile)?);
    println!("{}", text.lines().take(3).collect::<Vec<_>>().join("\n"));

    let samples = parse_dataset(text.as_bytes())?;
    let trajectory = run(&samples, &config.pipeline)?;
    let last = trajectory.last().unwrap();
    println!("{} samples -> final position {:?}, zeta {:.3e}", samples.len(), last.chi.spatial().as_slice(), last.chi.zeta);

    match "c = -1".parse::<Config>() {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
