use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::cyclotomic::{cos_pi, sin_pi, RealCyclotomic};

/// Point (or vector) in the plane with exact real cyclotomic coordinates.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub x: RealCyclotomic,
    pub y: RealCyclotomic,
}

impl Point {
    pub fn new(x: RealCyclotomic, y: RealCyclotomic) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(RealCyclotomic::zero(), RealCyclotomic::zero())
    }

    /// `length * (cos(direction), sin(direction))`.
    pub fn polar(length: &RealCyclotomic, direction: Angle) -> Self {
        Self::new(length * &cos_pi(direction), length * &sin_pi(direction))
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, k: &RealCyclotomic) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn scale_rational(&self, r: &BigRational) -> Point {
        Point::new(self.x.scale(r), self.y.scale(r))
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        self.add(o)
            .scale_rational(&BigRational::new(1.into(), 2.into()))
    }

    /// Counterclockwise rotation by `angle`.
    pub fn rotate(&self, angle: Angle) -> Point {
        let c = cos_pi(angle);
        let s = sin_pi(angle);
        Point::new(
            &(&self.x * &c) - &(&self.y * &s),
            &(&self.x * &s) + &(&self.y * &c),
        )
    }

    /// Mirror image in the horizontal axis.
    pub fn reflect_x(&self) -> Point {
        Point::new(self.x.clone(), -&self.y)
    }

    pub fn dot(&self, o: &Point) -> RealCyclotomic {
        &(&self.x * &o.x) + &(&self.y * &o.y)
    }

    /// `x1 y2 - y1 x2`.
    pub fn cross(&self, o: &Point) -> RealCyclotomic {
        &(&self.x * &o.y) - &(&self.y * &o.x)
    }

    pub fn norm_sq(&self) -> RealCyclotomic {
        self.dot(self)
    }

    pub fn lift(&self, m: u64) -> Point {
        Point::new(self.x.lift(m), self.y.lift(m))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.to_f64();
        write!(f, "({x:.9}, {y:.9})")
    }
}
