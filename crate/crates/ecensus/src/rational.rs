//! Exact rational arithmetic over 128-bit integers.
//!
//! Every identity this crate verifies (Deuring counts, class-number sums,
//! local densities) is exact, so the sums are carried in `Rational` and only
//! converted to `f64` at the reporting boundary. Arithmetic is
//! overflow-checked; the magnitudes involved (denominators up to ~p^12 for
//! p ≤ 13) leave plenty of headroom in `i128`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

fn gcd128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A reduced fraction with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num/den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd128(num, den).max(1);
        Rational {
            num: sign * (num / g),
            den: (den / g).abs(),
        }
    }

    pub fn from_int(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn abs(&self) -> Self {
        Rational {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Rational::ONE;
        for _ in 0..e {
            out = out * *self;
        }
        out
    }

    fn checked_mul_i128(a: i128, b: i128, what: &'static str) -> i128 {
        a.checked_mul(b).unwrap_or_else(|| panic!("rational overflow in {what}"))
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        let g = gcd128(self.den, rhs.den);
        let (da, db) = (self.den / g, rhs.den / g);
        let num = Self::checked_mul_i128(self.num, db, "add")
            .checked_add(Self::checked_mul_i128(rhs.num, da, "add"))
            .expect("rational overflow in add");
        let den = Self::checked_mul_i128(self.den, db, "add");
        Rational::new(num, den)
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = *self + rhs;
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        // Cross-reduce first to keep intermediates small.
        let g1 = gcd128(self.num, rhs.den).max(1);
        let g2 = gcd128(rhs.num, self.den).max(1);
        let num = Self::checked_mul_i128(self.num / g1, rhs.num / g2, "mul");
        let den = Self::checked_mul_i128(self.den / g2, rhs.den / g1, "mul");
        Rational::new(num, den)
    }
}

impl Mul<i128> for Rational {
    type Output = Rational;
    fn mul(self, rhs: i128) -> Rational {
        self * Rational::from_int(rhs)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        self * Rational::new(rhs.den, rhs.num)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = Self::checked_mul_i128(self.num, other.den, "cmp");
        let rhs = Self::checked_mul_i128(other.num, self.den, "cmp");
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
