//! Lorentz factor, boost matrix and interval preservation.

use nalgebra::Vector4;
use schlingel::core4d::{lorentz_boost, lorentz_factor, minkowski_interval, FourVector, RelativityConfig, Vector3};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RelativityConfig::with_c(1.0)?;
    for speed in [0.0, 0.3, 0.6, 0.9, 0.99] {
        println!("speed {speed:>4} m/s  gamma {:.6}", lorentz_factor(speed, &cfg)?);
    }

    let v = Vector3::new(0.6, 0.0, 0.0);
    let boost = lorentz_boost(&v, &cfg)?;
    println!("boost for v = {:?}:{boost}", v.as_slice());

    let event = FourVector::new(2.0, 1.0, 0.5, -0.25);
    let moved = FourVector::from(boost * Vector4::from(event));
    println!("event  {event:?}  interval {:.12}", minkowski_interval(event));
    println!("boosted {moved:?}  interval {:.12}", minkowski_interval(moved));

    match lorentz_factor(1.0, &cfg) {
        Err(e) => println!("at c: {e}"),
        Ok(g) => println!("unexpected gamma {g}"),
    }
    Ok(())
}
