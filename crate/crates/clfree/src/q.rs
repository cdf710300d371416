//! Scalar helpers for exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;
pub type Z = BigInt;

/// Rational from an integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

/// Rational n/d.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

pub fn zi(n: i64) -> Z {
    Z::from(n)
}

/// Formats a rational without a superfluous denominator.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// True if x is the square of a rational.
pub fn is_square(x: &Q) -> bool {
    if x.is_negative() {
        return false;
    }
    if x.is_zero() {
        return true;
    }
    int_sqrt_exact(x.numer()).is_some() && int_sqrt_exact(x.denom()).is_some()
}

/// Integer square root if n is a perfect square.
pub fn int_sqrt_exact(n: &Z) -> Option<Z> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}
