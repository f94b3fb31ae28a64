//! Strapdown IMU integration in a four-dimensional space-time frame.
//!
//! Accelerations and angular rates are integrated into velocity, translation
//! and orientation. Each step also yields a temporal coordinate `ζ` scaled by
//! the Lorentz factor of the current speed, so the result is a trajectory of
//! four-vectors `χ = (ζ, x, y, z)` with six plane-rotation angles.
//!
//! ```
//! use schlingel::core4d::Vector3;
//! use schlingel::pipeline::{run, PipelineConfig};
//! use schlingel::strapdown::ImuSample;
//!
//! let samples: Vec<_> = (0..=100)
//!     .map(|k| {
//!         let t = k as f64 / 100.0;
//!         ImuSample::new(t, Vector3::new(0.2, 0.0, 0.0), Vector3::zeros(), Vector3::zeros())
//!     })
//!     .collect();
//! let trajectory = run(&samples, &PipelineConfig::default()).unwrap();
//! let last = trajectory.last().unwrap();
//! assert!((last.chi.x - 0.1).abs() < 1e-12);
//! assert!(last.chi.zeta > 0.0);
//! ```

pub mod cli;
pub mod config;
pub mod core4d;
pub mod dataset;
pub mod frames;
pub mod maps;
pub mod pipeline;
pub mod sim;
pub mod strapdown;
