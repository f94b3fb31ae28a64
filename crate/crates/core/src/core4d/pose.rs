use nalgebra::Vector4;

use super::{EulerAngles, FourVector, Matrix4, PrimedAngles, RotationOrder};

/// A 10-DoF pose: six plane angles plus a four-translation.
///
/// A pose built from angles is *canonical*. Composing two poses yields a pose
/// whose rotation is held as a matrix; its angle fields are then zeroed and
/// [`Pose4D::is_canonical`] returns `false`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose4D {
    pub angles: EulerAngles,
    pub primed: PrimedAngles,
    pub translation: FourVector,
    order: RotationOrder,
    composed: Option<Matrix4>,
}

impl Default for Pose4D {
    fn default() -> Self {
        Self::identity()
    }
}

impl Pose4D {
    pub fn identity() -> Self {
        Self::new(EulerAngles::ZERO, PrimedAngles::ZERO, FourVector::ZERO)
    }

    pub fn new(angles: EulerAngles, primed: PrimedAngles, translation: FourVector) -> Self {
        Self {
            angles,
            primed,
            translation,
            order: RotationOrder::default(),
            composed: None,
        }
    }

    pub fn from_translation(translation: FourVector) -> Self {
        Self::new(EulerAngles::ZERO, PrimedAngles::ZERO, translation)
    }

    pub fn with_order(mut self, order: RotationOrder) -> Self {
        self.order = order;
        self
    }

    pub fn order(&self) -> RotationOrder {
        self.order
    }

    pub fn is_canonical(&self) -> bool {
        self.composed.is_none()
    }

    /// The stacked 4×4 rotation.
    pub fn rotation(&self) -> Matrix4 {
        match self.composed {
            Some(m) => m,
            None => self.order.compose(&self.angles, &self.primed),
        }
    }

    pub fn apply(&self, v: FourVector) -> FourVector {
        let rotated = self.rotation() * Vector4::from(v);
        FourVector::from(rotated) + self.translation
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Pose4D) -> Pose4D {
        let ra = self.rotation();
        let rotation = ra * other.rotation();
        let translation =
            FourVector::from(ra * Vector4::from(other.translation)) + self.translation;
        Pose4D {
            angles: EulerAngles::ZERO,
            primed: PrimedAngles::ZERO,
            translation,
            order: self.order,
            composed: Some(rotation),
        }
    }
}

/// Rotates `v` by the pose's six plane rotations, then adds its translation.
pub fn pose_apply(pose: &Pose4D, v: FourVector) -> FourVector {
    pose.apply(v)
}

/// Pose equivalent to applying `b` and then `a`.
pub fn pose_compose(a: &Pose4D, b: &Pose4D) -> Pose4D {
    a.compose(b)
}
