use std::fmt;
use std::str::FromStr;

use super::{Core4dError, EulerAngles, Matrix4, PrimedAngles};

/// One of the six coordinate planes of the four-dimensional space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Plane {
    /// x–y plane, angle ψ.
    Xy,
    /// x–z plane, angle θ.
    Xz,
    /// y–z plane, angle φ.
    Yz,
    /// ζ–z plane, angle ψ′.
    ZetaZ,
    /// ζ–y plane, angle θ′.
    ZetaY,
    /// ζ–x plane, angle φ′.
    ZetaX,
}

impl Plane {
    pub const ALL: [Plane; 6] = [
        Plane::Xy,
        Plane::Xz,
        Plane::Yz,
        Plane::ZetaX,
        Plane::ZetaY,
        Plane::ZetaZ,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Plane::Xy => "xy",
            Plane::Xz => "xz",
            Plane::Yz => "yz",
            Plane::ZetaZ => "zeta_z",
            Plane::ZetaY => "zeta_y",
            Plane::ZetaX => "zeta_x",
        }
    }

    /// Picks this plane's angle out of a pose's angle sets.
    pub fn angle_of(self, angles: &EulerAngles, primed: &PrimedAngles) -> f64 {
        match self {
            Plane::Xy => angles.psi,
            Plane::Xz => angles.theta,
            Plane::Yz => angles.phi,
            Plane::ZetaZ => primed.psi_p,
            Plane::ZetaY => primed.theta_p,
            Plane::ZetaX => primed.phi_p,
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Plane {
    type Err = Core4dError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "xy" => Ok(Plane::Xy),
            "xz" => Ok(Plane::Xz),
            "yz" => Ok(Plane::Yz),
            "zeta_z" | "ζz" => Ok(Plane::ZetaZ),
            "zeta_y" | "ζy" => Ok(Plane::ZetaY),
            "zeta_x" | "ζx" => Ok(Plane::ZetaX),
            other => Err(Core4dError::UnknownPlane(other.to_string())),
        }
    }
}

/// Rotation by `angle` radians within `plane`, acting on `(ζ, x, y, z)`.
///
/// The six matrices are written out in `(x, y, z, ζ)` index order (where the
/// plane blocks and their sign pattern are easiest to read) and then
/// conjugated into the canonical order. The ζ-plane rotations are circular,
/// so they preserve the Euclidean 4-norm rather than the Minkowski interval.
pub fn rotation_matrix(plane: Plane, angle: f64) -> Matrix4 {
    let (s, c) = angle.sin_cos();
    // (x, y, z, ζ) ordering
    #[rustfmt::skip]
    let xyzt = match plane {
        Plane::Xy => Matrix4::new(
            c,  -s,  0.0, 0.0,
            s,   c,  0.0, 0.0,
            0.0, 0.0, 1.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
        ),
        Plane::Xz => Matrix4::new(
            c,   0.0, s,   0.0,
            0.0, 1.0, 0.0, 0.0,
            -s,  0.0, c,   0.0,
            0.0, 0.0, 0.0, 1.0,
        ),
        Plane::Yz => Matrix4::new(
            1.0, 0.0, 0.0, 0.0,
            0.0, c,   -s,  0.0,
            0.0, s,   c,   0.0,
            0.0, 0.0, 0.0, 1.0,
        ),
        Plane::ZetaZ => Matrix4::new(
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, c,   s,
            0.0, 0.0, -s,  c,
        ),
        Plane::ZetaY => Matrix4::new(
            1.0, 0.0, 0.0, 0.0,
            0.0, c,   0.0, s,
            0.0, 0.0, 1.0, 0.0,
            0.0, -s,  0.0, c,
        ),
        Plane::ZetaX => Matrix4::new(
            c,   0.0, 0.0, -s,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0,
            s,   0.0, 0.0, c,
        ),
    };
    to_canonical_order(&xyzt)
}

/// Re-indexes a matrix from `(x, y, z, ζ)` to `(ζ, x, y, z)`.
fn to_canonical_order(m: &Matrix4) -> Matrix4 {
    let idx = |i: usize| (i + 1) % 4;
    let mut out = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            out[(idx(i), idx(j))] = m[(i, j)];
        }
    }
    out
}

/// Scales the spatial angles by `1 + τ_Γ` to obtain the ζ-plane angles.
pub fn primed_angles(angles: &EulerAngles, tau_gamma: f64) -> PrimedAngles {
    debug_assert!(tau_gamma >= 0.0, "tau_gamma must be >= 0");
    let k = 1.0 + tau_gamma;
    PrimedAngles::new(angles.psi * k, angles.theta * k, angles.phi * k)
}

/// Order in which the six plane rotations are multiplied. The first entry is
/// the leftmost factor, so the last entry acts on a vector first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotationOrder([Plane; 6]);

impl RotationOrder {
    pub fn new(planes: [Plane; 6]) -> Result<Self, Core4dError> {
        for p in Plane::ALL {
            if !planes.contains(&p) {
                return Err(Core4dError::InvalidRotationOrder(format!(
                    "plane {p} is missing; the order must be a permutation of all six planes"
                )));
            }
        }
        Ok(Self(planes))
    }

    pub fn planes(&self) -> &[Plane; 6] {
        &self.0
    }

    /// Product of the six plane rotations for the given angles.
    pub fn compose(&self, angles: &EulerAngles, primed: &PrimedAngles) -> Matrix4 {
        self.0.iter().fold(Matrix4::identity(), |acc, &p| {
            acc * rotation_matrix(p, p.angle_of(angles, primed))
        })
    }
}

impl Default for RotationOrder {
    /// `R_xy · R_xz · R_yz · R_ζx · R_ζy · R_ζz`.
    fn default() -> Self {
        Self(Plane::ALL)
    }
}

impl FromStr for RotationOrder {
    type Err = Core4dError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let planes = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(Plane::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        let planes: [Plane; 6] = planes.try_into().map_err(|v: Vec<Plane>| {
            Core4dError::InvalidRotationOrder(format!("expected 6 planes, got {}", v.len()))
        })?;
        Self::new(planes)
    }
}

impl fmt::Display for RotationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tags: Vec<_> = self.0.iter().map(|p| p.tag()).collect();
        f.write_str(&tags.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector4;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn zero_angle_is_exact_identity() {
        for p in Plane::ALL {
            assert_eq!(rotation_matrix(p, 0.0), Matrix4::identity(), "{p}");
        }
    }

    #[test]
    fn xy_quarter_turn() {
        let r = rotation_matrix(Plane::Xy, FRAC_PI_2);
        let v = r * Vector4::new(0.7, 1.0, 0.0, 0.0);
        assert_abs_diff_eq!(v, Vector4::new(0.7, 0.0, 1.0, 0.0), epsilon = 1e-15);
    }

    #[test]
    fn zeta_z_half_turn() {
        let r = rotation_matrix(Plane::ZetaZ, PI);
        let v = r * Vector4::new(1.0, 0.0, 0.0, 1.0);
        assert_abs_diff_eq!(v, Vector4::new(-1.0, 0.0, 0.0, -1.0), epsilon = 1e-15);
        // x and y untouched
        assert_eq!(r[(1, 1)], 1.0);
        assert_eq!(r[(2, 2)], 1.0);
    }

    #[test]
    fn zeta_planes_touch_expected_axes() {
        // ζ–z block: rows/cols (0, 3)
        let r = rotation_matrix(Plane::ZetaZ, 0.3);
        assert_abs_diff_eq!(r[(0, 3)], -(0.3f64).sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(r[(3, 0)], (0.3f64).sin(), epsilon = 1e-15);
        // ζ–y block: rows/cols (0, 2)
        let r = rotation_matrix(Plane::ZetaY, 0.3);
        assert_abs_diff_eq!(r[(2, 0)], (0.3f64).sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(r[(0, 2)], -(0.3f64).sin(), epsilon = 1e-15);
        // ζ–x block: rows/cols (0, 1)
        let r = rotation_matrix(Plane::ZetaX, 0.3);
        assert_abs_diff_eq!(r[(1, 0)], -(0.3f64).sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(r[(0, 1)], (0.3f64).sin(), epsilon = 1e-15);
    }

    #[test]
    fn plane_parsing() {
        assert_eq!("zeta_x".parse::<Plane>().unwrap(), Plane::ZetaX);
        assert_eq!("ζz".parse::<Plane>().unwrap(), Plane::ZetaZ);
        assert!(matches!(
            "xw".parse::<Plane>(),
            Err(Core4dError::UnknownPlane(_))
        ));
    }

    #[test]
    fn rotation_order_validation() {
        let order: RotationOrder = "zeta_z zeta_y zeta_x yz xz xy".parse().unwrap();
        assert_eq!(order.planes()[0], Plane::ZetaZ);
        assert_eq!(order.to_string(), "zeta_z zeta_y zeta_x yz xz xy");
        assert!("xy xy xz yz zeta_x zeta_y".parse::<RotationOrder>().is_err());
        assert!("xy xz".parse::<RotationOrder>().is_err());
        assert_eq!(
            RotationOrder::default().to_string(),
            "xy xz yz zeta_x zeta_y zeta_z"
        );
    }

    #[test]
    fn primed_examples() {
        let a = EulerAngles::new(0.2, -0.1, 0.5);
        assert_eq!(primed_angles(&a, 0.0), PrimedAngles::new(0.2, -0.1, 0.5));
        let p = primed_angles(&EulerAngles::new(FRAC_PI_2, 0.0, 0.0), 0.25);
        assert_eq!(p, PrimedAngles::new(1.25 * FRAC_PI_2, 0.0, 0.0));
        assert_eq!(primed_angles(&EulerAngles::ZERO, 0.7), PrimedAngles::ZERO);
    }
}
