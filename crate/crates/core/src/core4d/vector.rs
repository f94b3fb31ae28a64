use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::Vector4;

use super::Vector3;

/// A point or displacement `χ = (ζ, x, y, z)`, all components in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector {
    pub zeta: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const ZERO: FourVector = FourVector {
        zeta: 0.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(zeta: f64, x: f64, y: f64, z: f64) -> Self {
        Self { zeta, x, y, z }
    }

    /// Builds a four-vector from a temporal component and a spatial part.
    pub fn from_parts(zeta: f64, spatial: Vector3) -> Self {
        Self::new(zeta, spatial.x, spatial.y, spatial.z)
    }

    pub fn spatial(&self) -> Vector3 {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.zeta, self.x, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// `ζ² - x² - y² - z²`.
    pub fn interval(&self) -> f64 {
        self.zeta * self.zeta - self.x * self.x - self.y * self.y - self.z * self.z
    }

    /// Plain Euclidean length over all four components.
    pub fn euclidean_norm(&self) -> f64 {
        self.to_array().iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// Signed quadratic form `ζ² - x² - y² - z²` (signature `+ - - -`).
pub fn minkowski_interval(v: FourVector) -> f64 {
    v.interval()
}

impl From<[f64; 4]> for FourVector {
    fn from(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Vector4<f64>> for FourVector {
    fn from(v: Vector4<f64>) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

impl From<FourVector> for Vector4<f64> {
    fn from(v: FourVector) -> Self {
        Vector4::new(v.zeta, v.x, v.y, v.z)
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.zeta + o.zeta, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for FourVector {
    fn add_assign(&mut self, o: FourVector) {
        *self = *self + o;
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector::new(self.zeta - o.zeta, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector::new(-self.zeta, -self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: f64) -> FourVector {
        FourVector::new(self.zeta * s, self.x * s, self.y * s, self.z * s)
    }
}

/// Spatial plane angles in radians.
///
/// `psi` turns the x–y plane (about z), `theta` the x–z plane and `phi` the
/// y–z plane. Accumulated angles are not wrapped.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EulerAngles {
    pub psi: f64,
    pub theta: f64,
    pub phi: f64,
}

impl EulerAngles {
    pub const ZERO: EulerAngles = EulerAngles {
        psi: 0.0,
        theta: 0.0,
        phi: 0.0,
    };

    pub const fn new(psi: f64, theta: f64, phi: f64) -> Self {
        Self { psi, theta, phi }
    }

    pub fn is_finite(&self) -> bool {
        self.psi.is_finite() && self.theta.is_finite() && self.phi.is_finite()
    }
}

impl Add for EulerAngles {
    type Output = EulerAngles;
    fn add(self, o: EulerAngles) -> EulerAngles {
        EulerAngles::new(self.psi + o.psi, self.theta + o.theta, self.phi + o.phi)
    }
}

/// Angles of the three planes containing the ζ axis: `psi_p` (ζ–z),
/// `theta_p` (ζ–y) and `phi_p` (ζ–x).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PrimedAngles {
    pub psi_p: f64,
    pub theta_p: f64,
    pub phi_p: f64,
}

impl PrimedAngles {
    pub const ZERO: PrimedAngles = PrimedAngles {
        psi_p: 0.0,
        theta_p: 0.0,
        phi_p: 0.0,
    };

    pub const fn new(psi_p: f64, theta_p: f64, phi_p: f64) -> Self {
        Self {
            psi_p,
            theta_p,
            phi_p,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.psi_p.is_finite() && self.theta_p.is_finite() && self.phi_p.is_finite()
    }
}
