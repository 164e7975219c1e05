use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::skeleton::{Landmark, LANDMARK_COUNT};

/// Norm below which a vector has no usable direction.
pub const DEGENERATE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, o: Vec3) -> f64 {
        (self - o).norm()
    }
}

impl From<&Landmark> for Vec3 {
    fn from(l: &Landmark) -> Self {
        Vec3::new(l.x, l.y, l.z)
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Vec3::new(x, y, z)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("vector norm at or below {DEGENERATE_EPS}")]
pub struct DegenerateVector;

/// Unsigned angle between two vectors, in `[0, π]`.
///
/// Evaluated as `atan2(|u × v|, u · v)`, which equals the arccosine of the
/// normalized dot product but stays accurate for nearly (anti)parallel inputs.
pub fn angle_between(u: Vec3, v: Vec3) -> Result<f64, DegenerateVector> {
    if u.norm() <= DEGENERATE_EPS || v.norm() <= DEGENERATE_EPS {
        return Err(DegenerateVector);
    }
    Ok(u.cross(v).norm().atan2(u.dot(v)))
}

/// Center of a four-vertex limb polygon: the component-wise mean.
pub fn limb_center(p1: Vec3, p2: Vec3, p3: Vec3, p4: Vec3) -> Vec3 {
    Vec3::new(
        (p1.x + p2.x + p3.x + p4.x) / 4.0,
        (p1.y + p2.y + p3.y + p4.y) / 4.0,
        (p1.z + p2.z + p3.z + p4.z) / 4.0,
    )
}

/// Mass-fraction weighted sum of landmark positions.
pub fn barycenter(landmarks: &[Landmark; LANDMARK_COUNT], coefficients: &[(usize, f64)]) -> Vec3 {
    coefficients
        .iter()
        .fold(Vec3::default(), |acc, &(idx, c)| acc + Vec3::from(&landmarks[idx]) * c)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;

    #[test]
    fn angle_between_axes() {
        assert_eq!(angle_between(Vec3::X, Vec3::X).unwrap(), 0.0);
        assert_eq!(angle_between(Vec3::X, Vec3::Y).unwrap(), FRAC_PI_2);
        assert_eq!(angle_between(Vec3::X, -Vec3::X).unwrap(), PI);
        assert_eq!(angle_between(Vec3::X, Vec3::default()), Err(DegenerateVector));
        assert_eq!(angle_between(Vec3::X * 1e-10, Vec3::Y), Err(DegenerateVector));
    }

    #[test]
    fn angle_matches_arccos_away_from_endpoints() {
        let u = Vec3::new(0.3, -1.2, 0.7);
        let v = Vec3::new(-0.4, 0.1, 2.0);
        let expected = (u.dot(v) / (u.norm() * v.norm())).clamp(-1.0, 1.0).acos();
        assert!((angle_between(u, v).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn limb_center_cases() {
        let sq = limb_center(
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
        );
        assert_eq!(sq, Vec3::new(0.5, 0.5, 0.0));

        let p = Vec3::new(-0.7, 3.25, 11.0);
        assert_eq!(limb_center(p, p, p, p), p);

        let c = limb_center(
            Vec3::new(1.0, 2.0, 3.0),
            Vec3::new(3.0, 2.0, 1.0),
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(4.0, 4.0, 4.0),
        );
        assert_eq!(c, Vec3::new(2.0, 2.0, 2.0));
    }

    #[test]
    fn barycenter_point_mass_and_midpoint() {
        let mut lms = [Landmark::default(); LANDMARK_COUNT];
        lms[0] = Landmark::new(0.2, 0.4, -1.0, 1.0);
        lms[5] = Landmark::new(1.0, 1.0, 1.0, 1.0);
        assert_eq!(barycenter(&lms, &[(0, 1.0)]), Vec3::new(0.2, 0.4, -1.0));
        assert_eq!(barycenter(&lms, &[(0, 0.5), (5, 0.5)]), Vec3::new(0.6, 0.7, 0.0));
    }
}
