//! Exact half-integers stored as doubled integers.

use std::fmt;

/// A half-integer `v`, stored as `2v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_doubled(doubled: i32) -> Self {
        HalfInt(doubled)
    }

    pub const fn from_int(v: i32) -> Self {
        HalfInt(2 * v)
    }

    pub const fn doubled(self) -> i32 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_and_display() {
        assert!(HalfInt::from_doubled(4).is_integer());
        assert!(!HalfInt::from_doubled(3).is_integer());
        assert_eq!(HalfInt::from_doubled(3).to_string(), "3/2");
        assert_eq!(HalfInt::from_doubled(-1).to_string(), "-1/2");
        assert_eq!(HalfInt::from_int(2).to_string(), "2");
        assert_eq!(HalfInt::from_doubled(3).value(), 1.5);
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = HalfInt::from_doubled(3);
        let b = HalfInt::from_doubled(1);
        assert_eq!(a + b, HalfInt::from_int(2));
        assert_eq!(a - b, HalfInt::from_int(1));
        assert_eq!(-a, HalfInt::from_doubled(-3));
    }
}
