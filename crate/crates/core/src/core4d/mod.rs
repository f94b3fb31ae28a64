//! Relativistic linear algebra on the four-dimensional space with signature
//! `(+ - - -)` and canonical component order `(ζ, x, y, z)`.
//!
//! The temporal coordinate `ζ = c·t` is measured in meters. The conversion
//! speed `c` defaults to `1 m/s`, which means any platform moving faster than
//! one meter per second is rejected by [`lorentz_factor`] unless a larger `c`
//! is configured.
//!
//! Everything here is a pure function of its inputs.

mod lorentz;
mod pose;
mod rotation;
mod vector;

pub use lorentz::{
    lorentz_boost, lorentz_factor, lorentz_scale, temporal_translation, translation_matrix,
};
pub use pose::{pose_apply, pose_compose, Pose4D};
pub use rotation::{primed_angles, rotation_matrix, Plane, RotationOrder};
pub use vector::{minkowski_interval, EulerAngles, FourVector, PrimedAngles};

use thiserror::Error;

/// Row-major 4×4 matrix acting on `(ζ, x, y, z)`.
pub type Matrix4 = nalgebra::Matrix4<f64>;
/// 5×5 homogeneous matrix acting on `(ζ, x, y, z, 1)`.
pub type Matrix5 = nalgebra::SMatrix<f64, 5, 5>;
/// Spatial 3-vector.
pub type Vector3 = nalgebra::Vector3<f64>;

/// The metric `η = diag(1, -1, -1, -1)`.
pub fn minkowski_metric() -> Matrix4 {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -1.0, -1.0))
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Core4dError {
    #[error("SuperluminalSpeed: speed {speed} m/s reaches the limit {limit} m/s (c = {c} m/s)")]
    SuperluminalSpeed { speed: f64, limit: f64, c: f64 },
    #[error("DomainError: {0}")]
    Domain(String),
    #[error("UnknownPlane: `{0}` is not one of xy, xz, yz, zeta_x, zeta_y, zeta_z")]
    UnknownPlane(String),
    #[error("invalid relativity config: {0}")]
    InvalidConfig(String),
    #[error("invalid rotation order: {0}")]
    InvalidRotationOrder(String),
}

/// Conversion speed and the safety margin used by the superluminal guard.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativityConfig {
    c: f64,
    epsilon_speed: f64,
}

impl RelativityConfig {
    pub const DEFAULT_C: f64 = 1.0;
    pub const DEFAULT_EPSILON_SPEED: f64 = 1e-12;

    pub fn new(c: f64, epsilon_speed: f64) -> Result<Self, Core4dError> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Core4dError::InvalidConfig(format!(
                "c must be positive and finite, got {c}"
            )));
        }
        if !(epsilon_speed > 0.0 && epsilon_speed < 1.0) {
            return Err(Core4dError::InvalidConfig(format!(
                "epsilon_speed must lie in (0, 1), got {epsilon_speed}"
            )));
        }
        Ok(Self { c, epsilon_speed })
    }

    pub fn with_c(c: f64) -> Result<Self, Core4dError> {
        Self::new(c, Self::DEFAULT_EPSILON_SPEED)
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn epsilon_speed(&self) -> f64 {
        self.epsilon_speed
    }

    /// Smallest speed that is refused: `c·(1 - epsilon_speed)`.
    pub fn speed_limit(&self) -> f64 {
        self.c * (1.0 - self.epsilon_speed)
    }
}

impl Default for RelativityConfig {
    fn default() -> Self {
        Self {
            c: Self::DEFAULT_C,
            epsilon_speed: Self::DEFAULT_EPSILON_SPEED,
        }
    }
}
