use super::{Core4dError, FourVector, Matrix4, Matrix5, RelativityConfig, Vector3};

/// Lorentz factor `Γ = 1 / √(1 - (v/c)²)`.
///
/// Speeds at or above `c·(1 - epsilon_speed)` are refused with
/// [`Core4dError::SuperluminalSpeed`] instead of producing `inf`/`NaN`.
pub fn lorentz_factor(speed: f64, cfg: &RelativityConfig) -> Result<f64, Core4dError> {
    if !speed.is_finite() || speed < 0.0 {
        return Err(Core4dError::Domain(format!(
            "speed must be finite and non-negative, got {speed}"
        )));
    }
    check_speed(speed, cfg)?;
    let beta = speed / cfg.c();
    Ok(1.0 / (1.0 - beta * beta).sqrt())
}

fn check_speed(speed: f64, cfg: &RelativityConfig) -> Result<(), Core4dError> {
    if speed / cfg.c() >= 1.0 - cfg.epsilon_speed() {
        return Err(Core4dError::SuperluminalSpeed {
            speed,
            limit: cfg.speed_limit(),
            c: cfg.c(),
        });
    }
    Ok(())
}

/// Scalar boost magnitude `τ_Γ = Γ - 1`; zero for a platform at rest.
pub fn lorentz_scale(gamma: f64) -> Result<f64, Core4dError> {
    if gamma.is_nan() || gamma < 1.0 {
        return Err(Core4dError::Domain(format!(
            "Lorentz factor must be >= 1, got {gamma}"
        )));
    }
    Ok(gamma - 1.0)
}

/// Symmetric boost matrix for a frame moving with `velocity`, in `(ζ, x, y, z)`
/// order. Reduces to the identity at `v = 0`.
pub fn lorentz_boost(velocity: &Vector3, cfg: &RelativityConfig) -> Result<Matrix4, Core4dError> {
    if !velocity.iter().all(|c| c.is_finite()) {
        return Err(Core4dError::Domain("velocity must be finite".into()));
    }
    let v2 = velocity.norm_squared();
    let gamma = lorentz_factor(v2.sqrt(), cfg)?;
    let c = cfg.c();

    let mut m = Matrix4::identity();
    m[(0, 0)] = gamma;
    for i in 0..3 {
        let mixed = -gamma * velocity[i] / c;
        m[(0, i + 1)] = mixed;
        m[(i + 1, 0)] = mixed;
    }
    // (Γ-1)·vᵢvⱼ/v² vanishes continuously as v -> 0
    if v2 > 0.0 {
        for i in 0..3 {
            for j in 0..3 {
                m[(i + 1, j + 1)] += (gamma - 1.0) * velocity[i] * velocity[j] / v2;
            }
        }
    }
    Ok(m)
}

/// Temporal translation `T_ζ = τ_Γ·‖T‖₂` for a spatial translation `T`.
///
/// `tau_gamma` must be non-negative.
pub fn temporal_translation(translation: &Vector3, tau_gamma: f64) -> f64 {
    debug_assert!(tau_gamma >= 0.0, "tau_gamma must be >= 0");
    tau_gamma * translation.norm()
}

/// Homogeneous 5×5 four-translation matrix.
///
/// The spatial diagonal carries `-1`, so a homogeneous point
/// `(ζ, x, y, z, 1)` maps to `(ζ + T_ζ, -x + T_x, -y + T_y, -z + T_z, 1)`.
pub fn translation_matrix(t: &FourVector) -> Matrix5 {
    let mut m = Matrix5::zeros();
    m[(0, 0)] = 1.0;
    m[(1, 1)] = -1.0;
    m[(2, 2)] = -1.0;
    m[(3, 3)] = -1.0;
    m[(4, 4)] = 1.0;
    for (row, value) in t.to_array().into_iter().enumerate() {
        m[(row, 4)] = value;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core4d::minkowski_metric;
    use approx::assert_abs_diff_eq;
    use nalgebra::SVector;

    fn cfg() -> RelativityConfig {
        RelativityConfig::default()
    }

    #[test]
    fn factor_examples() {
        assert_eq!(lorentz_factor(0.0, &cfg()).unwrap(), 1.0);
        assert_abs_diff_eq!(lorentz_factor(0.6, &cfg()).unwrap(), 1.25, epsilon = 1e-15);
        assert_abs_diff_eq!(
            lorentz_factor(0.8, &cfg()).unwrap(),
            5.0 / 3.0,
            epsilon = 1e-15
        );
        let c10 = RelativityConfig::with_c(10.0).unwrap();
        assert_abs_diff_eq!(lorentz_factor(6.0, &c10).unwrap(), 1.25, epsilon = 1e-15);
    }

    #[test]
    fn factor_refuses_light_speed() {
        for s in [1.0, 1.5, 1.0 - 1e-13] {
            assert!(matches!(
                lorentz_factor(s, &cfg()),
                Err(Core4dError::SuperluminalSpeed { .. })
            ));
        }
        assert!(matches!(lorentz_factor(-0.1, &cfg()), Err(Core4dError::Domain(_))));
        assert!(matches!(
            lorentz_factor(f64::NAN, &cfg()),
            Err(Core4dError::Domain(_))
        ));
    }

    #[test]
    fn scale_examples() {
        assert_eq!(lorentz_scale(1.0).unwrap(), 0.0);
        assert_eq!(lorentz_scale(1.25).unwrap(), 0.25);
        assert_abs_diff_eq!(lorentz_scale(5.0 / 3.0).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert!(lorentz_scale(0.99).is_err());
        assert!(lorentz_scale(f64::NAN).is_err());
    }

    #[test]
    fn boost_at_rest_is_identity() {
        let m = lorentz_boost(&Vector3::zeros(), &cfg()).unwrap();
        assert_eq!(m, Matrix4::identity());
    }

    #[test]
    fn boost_along_x() {
        let m = lorentz_boost(&Vector3::new(0.6, 0.0, 0.0), &cfg()).unwrap();
        #[rustfmt::skip]
        let expected = Matrix4::new(
            1.25, -0.75, 0.0, 0.0,
            -0.75, 1.25, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
        );
        assert_abs_diff_eq!(m, expected, epsilon = 1e-15);
        let eta = minkowski_metric();
        assert_abs_diff_eq!(m.transpose() * eta * m, eta, epsilon = 1e-12);
    }

    #[test]
    fn boost_along_y_permutes_block() {
        let m = lorentz_boost(&Vector3::new(0.0, 0.6, 0.0), &cfg()).unwrap();
        #[rustfmt::skip]
        let expected = Matrix4::new(
            1.25, 0.0, -0.75, 0.0,
            0.0, 1.0, 0.0, 0.0,
            -0.75, 0.0, 1.25, 0.0,
            0.0, 0.0, 0.0, 1.0,
        );
        assert_abs_diff_eq!(m, expected, epsilon = 1e-15);
    }

    #[test]
    fn boost_is_symmetric_and_guards_speed() {
        let m = lorentz_boost(&Vector3::new(0.3, -0.2, 0.5), &cfg()).unwrap();
        assert_abs_diff_eq!(m, m.transpose(), epsilon = 1e-15);
        assert!(matches!(
            lorentz_boost(&Vector3::new(0.8, 0.8, 0.0), &cfg()),
            Err(Core4dError::SuperluminalSpeed { .. })
        ));
    }

    #[test]
    fn temporal_translation_examples() {
        assert_eq!(temporal_translation(&Vector3::zeros(), 0.25), 0.0);
        assert_eq!(temporal_translation(&Vector3::new(3.0, 4.0, 0.0), 0.25), 1.25);
        assert_eq!(temporal_translation(&Vector3::new(1.0, 2.0, 2.0), 0.0), 0.0);
    }

    fn hom(p: [f64; 5]) -> SVector<f64, 5> {
        SVector::<f64, 5>::from_column_slice(&p)
    }

    #[test]
    fn translation_matrix_examples() {
        let p = hom([1.0, 2.0, 3.0, 4.0, 1.0]);
        let zero = translation_matrix(&FourVector::ZERO);
        assert_eq!(zero * p, hom([1.0, -2.0, -3.0, -4.0, 1.0]));

        let ones = translation_matrix(&FourVector::new(1.0, 1.0, 1.0, 1.0));
        assert_eq!(ones * p, hom([2.0, -1.0, -2.0, -3.0, 1.0]));
    }

    #[test]
    fn translation_matrix_squared() {
        // M(T)² = [[S, S·T + T], [0, 1]] with S = diag(1,-1,-1,-1): the
        // spatial part returns to the original point and the ζ part doubles.
        let t = FourVector::new(0.5, 1.5, -2.0, 3.0);
        let m = translation_matrix(&t);
        let p = hom([0.25, 2.0, 3.0, 4.0, 1.0]);
        let got = m * m * p;
        assert_abs_diff_eq!(got, hom([0.25 + 1.0, 2.0, 3.0, 4.0, 1.0]), epsilon = 1e-15);
    }
}
