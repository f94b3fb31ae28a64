//! The six plane rotations and 10-DoF pose composition.

use std::f64::consts::FRAC_PI_2;

use schlingel::core4d::{
    pose_apply, pose_compose, primed_angles, rotation_matrix, EulerAngles, FourVector, Plane, Pose4D, RotationOrder,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for plane in Plane::ALL {
        println!("R_{plane}(0.3) ={}", rotation_matrix(plane, 0.3));
    }

    let angles = EulerAngles::new(FRAC_PI_2, 0.0, 0.0);
    let primed = primed_angles(&angles, 0.0);
    let turn = Pose4D::new(angles, primed, FourVector::ZERO);
    let x_axis = FourVector::new(0.0, 1.0, 0.0, 0.0);
    println!("quarter turn in xy: {:?} -> {:?}", x_axis, pose_apply(&turn, x_axis));

    let shift = Pose4D::from_translation(FourVector::new(0.1, 1.0, 0.0, 0.0));
    let both = pose_compose(&shift, &turn);
    println!("turn then shift:    {:?}", pose_apply(&both, x_axis));

    let order: RotationOrder = "zeta_z zeta_y zeta_x yz xz xy".parse()?;
    let reordered = Pose4D::new(EulerAngles::new(0.2, 0.1, -0.3), primed_angles(&EulerAngles::new(0.2, 0.1, -0.3), 0.25), FourVector::ZERO)
        .with_order(order);
    println!("order `{order}` gives{}", reordered.rotation());
    Ok(())
}
