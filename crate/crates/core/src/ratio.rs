//! Exact rational helpers shared by reports and the CLI renderer.

use num::bigint::ToBigInt;
use num::{BigInt, BigRational, BigUint, One, Zero};

/// Reduced non-negative rational `num / den` from unsigned parts.
pub fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    assert!(!den.is_zero(), "zero denominator");
    BigRational::new(num.to_bigint().unwrap(), den.to_bigint().unwrap())
}

/// Rational from machine integers.
pub fn ratio_usize(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `value` rounded half away from zero to four decimal places, as
/// `x.xxxx` (with a leading `-` for negative values).
///
/// Computed in exact integer arithmetic so the rendering never depends on
/// floating point.
pub fn decimal4(value: &BigRational) -> String {
    let negative = value.numer().sign() == num::bigint::Sign::Minus;
    let num = value.numer().magnitude();
    let den = value.denom().magnitude();
    let scaled = (num * BigUint::from(20000u32) + den) / (den * BigUint::from(2u32));
    let whole = &scaled / BigUint::from(10000u32);
    let frac = &scaled % BigUint::from(10000u32);
    let sign = if negative && !scaled.is_zero() { "-" } else { "" };
    format!("{sign}{whole}.{frac:04}")
}

/// Canonical text form `num/den (~x.xxxx)`; integral values drop the
/// denominator, e.g. `5/3 (~1.6667)` and `2 (~2.0000)`.
pub fn render(value: &BigRational) -> String {
    format!("{} (~{})", plain(value), decimal4(value))
}

/// `num/den` without the decimal tail (or just `num` for integers).
pub fn plain(value: &BigRational) -> String {
    if value.denom().is_one() {
        format!("{}", value.numer())
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
