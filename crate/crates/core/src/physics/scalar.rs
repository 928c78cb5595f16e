use super::{Axis, EigenSystem, Physics};
use crate::error::PhysicsError;
use crate::scalar::Real;

/// `u_t + c u_x = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearAdvection<T> {
    pub speed: T,
}

impl<T: Real> Default for LinearAdvection<T> {
    fn default() -> Self {
        Self { speed: T::one() }
    }
}

impl<T: Real> Physics<T, 1> for LinearAdvection<T> {
    #[inline]
    fn flux(&self, u: &[T; 1], _axis: Axis) -> [T; 1] {
        [self.speed * u[0]]
    }

    #[inline]
    fn roe_eigensystem(
        &self,
        _ul: &[T; 1],
        _ur: &[T; 1],
        _axis: Axis,
    ) -> Result<EigenSystem<T, 1>, PhysicsError> {
        Ok(EigenSystem::identity(self.speed))
    }

    #[inline]
    fn wave_speeds(&self, _u: &[T; 1], _axis: Axis) -> Result<[T; 1], PhysicsError> {
        Ok([self.speed.abs()])
    }

    fn reflect(&self, u: &[T; 1], _axis: Axis) -> [T; 1] {
        *u
    }

    fn component_names(&self) -> [&'static str; 1] {
        ["u"]
    }
}

/// `u_t + (u^2 / 2)_x = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Burgers;

impl<T: Real> Physics<T, 1> for Burgers {
    #[inline]
    fn flux(&self, u: &[T; 1], _axis: Axis) -> [T; 1] {
        [T::ratio(1, 2) * u[0] * u[0]]
    }

    #[inline]
    fn roe_eigensystem(
        &self,
        ul: &[T; 1],
        ur: &[T; 1],
        _axis: Axis,
    ) -> Result<EigenSystem<T, 1>, PhysicsError> {
        Ok(EigenSystem::identity(T::ratio(1, 2) * (ul[0] + ur[0])))
    }

    #[inline]
    fn wave_speeds(&self, u: &[T; 1], _axis: Axis) -> Result<[T; 1], PhysicsError> {
        Ok([u[0].abs()])
    }

    fn reflect(&self, u: &[T; 1], _axis: Axis) -> [T; 1] {
        [-u[0]]
    }

    fn component_names(&self) -> [&'static str; 1] {
        ["u"]
    }
}
