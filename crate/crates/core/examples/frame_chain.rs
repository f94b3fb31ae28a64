//! Sensor-to-world alignment, gravity removal and magnetic heading.

use std::f64::consts::FRAC_PI_2;

use schlingel::core4d::Vector3;
use schlingel::frames::{heading_from_magnetic, FrameChain, FrameId, FrameTransform};
use schlingel::strapdown::ImuSample;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // sensor mounted with a 90° yaw relative to the vehicle body
    let mount = FrameTransform::yaw(FrameId::SensorIntrinsic, FrameId::SensorExtrinsic, FRAC_PI_2);
    let body = FrameTransform::identity(FrameId::SensorExtrinsic, FrameId::World);
    let chain = FrameChain::new(vec![mount, body])?;

    let reading = ImuSample::new(
        0.0,
        Vector3::new(0.5, 0.0, 9.81),
        Vector3::new(0.0, 0.0, 0.1),
        Vector3::new(20.0, 0.0, -40.0),
    );
    let world = chain.apply(&reading);
    println!("world accel {:?} (gravity removed)", world.accel.as_slice());
    println!("world gyro  {:?}", world.gyro.as_slice());
    println!("heading from sensor field {:.6} rad", heading_from_magnetic(&reading.mag, 0.0)?);
    println!("heading from world field  {:.6} rad", heading_from_magnetic(&world.mag, 0.0)?);

    let broken = FrameChain::new(vec![FrameTransform::identity(FrameId::SensorIntrinsic, FrameId::CameraIntrinsic)]);
    println!("chain not ending in world: {}", broken.unwrap_err());
    Ok(())
}
