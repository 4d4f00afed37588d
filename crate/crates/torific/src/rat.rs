//! Arbitrary-precision rational numbers and small helpers.
//!
//! A thin layer over `num_rational::BigRational`: values are always stored
//! reduced with a positive denominator, which is exactly the invariant the
//! rest of the crate relies on. Rationals are serialized as `"num/den"`
//! strings, never as floats.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Render as `num` or `num/den`.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"n"` or `"n/d"`.
pub fn rat_parse(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// Numerator/denominator of a reduced fraction as `(num, den)` with `den > 0`.
pub fn num_den(r: &Rat) -> (Int, Int) {
    (r.numer().clone(), r.denom().clone())
}

/// True if the rational is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Exact conversion to `i64` when the value is a small integer.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    let n = r.numer();
    let v = i64::try_from(n).ok()?;
    Some(v)
}

/// gcd of two i64 values, always non-negative.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// lcm of two positive i64 values.
pub fn lcm_i64(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_i64(a, b) * b
    }
}

/// Exact rational `n`-th root when one exists.
///
/// For even `n` the non-negative root is returned; negative inputs have no
/// even-order rational root. For odd `n` the sign is preserved.
pub fn nth_root_exact(r: &Rat, n: u32) -> Option<Rat> {
    assert!(n >= 1);
    if n == 1 {
        return Some(r.clone());
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    if r.is_negative() && n % 2 == 0 {
        return None;
    }
    let num = nth_root_int(&r.numer().abs(), n)?;
    let den = nth_root_int(r.denom(), n)?;
    let root = Rat::new(num, den);
    Some(if r.is_negative() { -root } else { root })
}

/// Exact integer `n`-th root of a non-negative integer, if one exists.
pub fn nth_root_int(v: &Int, n: u32) -> Option<Int> {
    assert!(!v.is_negative());
    if v.is_zero() || v.is_one() {
        return Some(v.clone());
    }
    let root = v.nth_root(n);
    if num_traits::pow(root.clone(), n as usize) == *v {
        Some(root)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let r = rat_parse("22/7").unwrap();
        assert_eq!(rat_str(&r), "22/7");
        assert_eq!(rat_str(&rat_parse("-6/4").unwrap()), "-3/2");
        assert_eq!(rat_str(&rat(5, 1)), "5");
        assert!(rat_parse("1/0").is_none());
    }

    #[test]
    fn integer_roots() {
        assert_eq!(nth_root_int(&Int::from(27), 3), Some(Int::from(3)));
        assert_eq!(nth_root_int(&Int::from(28), 3), None);
        assert_eq!(nth_root_int(&Int::from(1), 7), Some(Int::from(1)));
    }

    #[test]
    fn rational_roots() {
        assert_eq!(nth_root_exact(&rat(4, 9), 2), Some(rat(2, 3)));
        assert_eq!(nth_root_exact(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(nth_root_exact(&rat(-4, 9), 2), None);
        assert_eq!(nth_root_exact(&rat(2, 1), 2), None);
    }
}
