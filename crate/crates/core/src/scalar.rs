//! Scalar abstractions.
//!
//! Two families are used throughout the crate:
//!
//! * [`Real`]: floating point types (`f32`, `f64`) carrying the dynamics,
//!   eigensolvers and every computation that needs square roots or
//!   trigonometry.
//! * [`Scalar`]: ordered fields used for side-length combinatorics
//!   (triangle inequalities, walls, polytope membership). Implemented by the
//!   floating types and by [`num_rational::BigRational`] for exact work.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::BigInt;
use num_rational::BigRational;
use std::ops::Neg;

use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Floating point scalar used for all numerical linear algebra.
pub trait Real:
    Scalar
    + Float
    + FloatConst
    + FromPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + serde::Serialize
    + serde::de::DeserializeOwned
    + 'static
{
    /// Lossy conversion from an `f64` constant.
    #[inline]
    fn c(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite constant")
    }

    #[inline]
    fn from_usize_lossy(k: usize) -> Self {
        <Self as FromPrimitive>::from_usize(k).expect("small integer")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Ordered field used for side-length vectors.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialOrd + FromPrimitive + ToPrimitive + Debug + Display
{
    /// Exactly representable integer.
    fn from_int(k: i64) -> Self {
        <Self as FromPrimitive>::from_i64(k).expect("integer fits scalar")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `true` for types where equality is exact (no rounding).
    fn is_exact() -> bool;
}

impl Scalar for f32 {
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f64 {
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for BigRational {
    fn is_exact() -> bool {
        true
    }
}

/// `|x|` using only the ordered-field operations.
pub fn scalar_abs<S: Scalar>(x: S) -> S {
    if x < S::zero() {
        -x
    } else {
        x
    }
}

/// Exact rational side length.
pub type Rational = BigRational;

/// Parses a decimal (`"1.25"`, `"-3"`, `"2e-1"`) or fraction (`"p/q"`) string
/// into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if all_digits.is_empty() {
        BigInt::from(0)
    } else {
        all_digits.parse().ok()?
    };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Renders a rational as `"p/q"` (or `"p"` when integral).
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Nearest floating value of an exact rational.
pub fn rational_to_real<T: Real>(q: &BigRational) -> T {
    T::c(q.to_f64().unwrap_or(f64::NAN))
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut x = theta % two_pi;
    if x > T::PI() {
        x = x - two_pi;
    } else if x <= -T::PI() {
        x = x + two_pi;
    }
    x
}

/// Distance between two angles on the circle, in `[0, pi]`.
pub fn angle_distance<T: Real>(a: T, b: T) -> T {
    wrap_angle(a - b).abs()
}
