//! Binary fixed-point reals on top of `BigInt`.
//!
//! A [`Real`] is `mantissa / 2^bits`. Every primitive below truncates at most
//! one unit in the last place (ulp); series routines accumulate at most one
//! ulp per term, which the 64 guard bits of a [`super::PrecisionContext`]
//! absorb.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    mantissa: BigInt,
    bits: u32,
}

impl Real {
    pub fn zero(bits: u32) -> Self {
        Real { mantissa: BigInt::zero(), bits }
    }

    pub fn from_mantissa(mantissa: BigInt, bits: u32) -> Self {
        Real { mantissa, bits }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        Real { mantissa: BigInt::from(n) << bits, bits }
    }

    /// Nearest-below fixed-point image of `q`.
    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        let scaled = q.numer() << bits;
        Real { mantissa: scaled.div_floor(q.denom()), bits }
    }

    fn check(&self, other: &Real) {
        assert_eq!(self.bits, other.bits, "mixed fixed-point precisions");
    }

    pub fn add(&self, other: &Real) -> Real {
        self.check(other);
        Real { mantissa: &self.mantissa + &other.mantissa, bits: self.bits }
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.check(other);
        Real { mantissa: &self.mantissa - &other.mantissa, bits: self.bits }
    }

    pub fn neg(&self) -> Real {
        Real { mantissa: -&self.mantissa, bits: self.bits }
    }

    pub fn abs(&self) -> Real {
        Real { mantissa: self.mantissa.abs(), bits: self.bits }
    }

    pub fn mul(&self, other: &Real) -> Real {
        self.check(other);
        Real { mantissa: (&self.mantissa * &other.mantissa) >> self.bits, bits: self.bits }
    }

    pub fn div(&self, other: &Real) -> Real {
        self.check(other);
        assert!(!other.mantissa.is_zero(), "division by zero");
        Real { mantissa: (&self.mantissa << self.bits) / &other.mantissa, bits: self.bits }
    }

    pub fn mul_rational(&self, q: &Rational) -> Real {
        Real { mantissa: (&self.mantissa * q.numer()) / q.denom(), bits: self.bits }
    }

    pub fn mul_int(&self, n: i64) -> Real {
        Real { mantissa: &self.mantissa * n, bits: self.bits }
    }

    pub fn div_int(&self, n: i64) -> Real {
        Real { mantissa: &self.mantissa / n, bits: self.bits }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// `|self| <= 10^k`, decided exactly on the fixed-point value.
    pub fn le_pow10(&self, k: i32) -> bool {
        // |m| / 2^bits <= 10^k  <=>  |m| * 10^{-k} <= 2^bits  (k < 0)
        let m = self.mantissa.abs();
        let ten = BigInt::from(10);
        if k >= 0 {
            m <= (num_traits::pow(ten, k as usize) << self.bits)
        } else {
            m * num_traits::pow(ten, (-k) as usize) <= (BigInt::one() << self.bits)
        }
    }

    /// Approximate `log10 |self|` (`-inf` for zero).
    pub fn log10_abs(&self) -> f64 {
        let m = self.mantissa.abs();
        if m.is_zero() {
            return f64::NEG_INFINITY;
        }
        let len = m.bits();
        let shift = len.saturating_sub(60);
        let top = (&m >> shift).to_f64().unwrap_or(f64::NAN);
        top.log10() + (shift as f64 - self.bits as f64) * std::f64::consts::LOG10_2
    }

    /// Short scientific rendering, e.g. `3.142e0`; exact zero prints `0`.
    pub fn to_sci_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let l = self.log10_abs();
        let exp = l.floor();
        let lead = 10f64.powf(l - exp);
        let sign = if self.is_negative() { "-" } else { "" };
        format!("{sign}{lead:.3}e{}", exp as i64)
    }

    /// Decimal rendering truncated to `digits` fractional digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let scaled = (self.mantissa.abs() * num_traits::pow(BigInt::from(10), digits)) >> self.bits;
        let s = scaled.to_string();
        let s = format!("{:0>width$}", s, width = digits + 1);
        let (int_part, frac) = s.split_at(s.len() - digits);
        let sign = if self.is_negative() { "-" } else { "" };
        format!("{sign}{int_part}.{frac}")
    }

    /// `π` by Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
    pub fn pi(bits: u32) -> Real {
        let b = bits + 8;
        let pi = atan_inv(5, b).mul_int(16).sub(&atan_inv(239, b).mul_int(4));
        pi.round_to(bits)
    }

    /// `ln q` for a positive rational, via `q = 2^k y` with `y` in
    /// `[2/3, 4/3]` and `ln y = 2 atanh((y-1)/(y+1))`.
    pub fn ln_rational(q: &Rational, ln2: &Real) -> Real {
        assert!(q.is_positive(), "logarithm of non-positive rational");
        let bits = ln2.bits;
        let (k, y) = normalize_pow2(q);
        let t = (y.numer() - y.denom(), y.numer() + y.denom());
        let series = atanh_ratio(&t.0, &t.1, bits).mul_int(2);
        ln2.mul_int(k).add(&series)
    }

    /// `ln 2 = 2 atanh(1/3)`.
    pub fn ln2(bits: u32) -> Real {
        atanh_ratio(&BigInt::one(), &BigInt::from(3), bits + 8)
            .mul_int(2)
            .round_to(bits)
    }

    /// Natural logarithm of a positive fixed-point value.
    pub fn ln(&self, ln2: &Real) -> Real {
        self.check(ln2);
        assert!(self.mantissa.is_positive(), "logarithm of non-positive value");
        let bits = self.bits;
        // Bring the value to [2/3, 4/3) by a power-of-two shift.
        let len = self.mantissa.bits() as i64;
        let mut k = len - bits as i64;
        let mut y = shift_mantissa(&self.mantissa, -k);
        let one = BigInt::one() << bits;
        let four_thirds = (&one * 4) / 3;
        let two_thirds = (&one * 2) / 3;
        while y >= four_thirds {
            y >>= 1;
            k += 1;
        }
        while y < two_thirds {
            y <<= 1;
            k -= 1;
        }
        let y = Real { mantissa: y, bits };
        let one = Real::from_int(1, bits);
        let t = y.sub(&one).div(&y.add(&one));
        let t2 = t.mul(&t);
        let mut term = t.clone();
        let mut sum = t;
        let mut j = 1i64;
        loop {
            term = term.mul(&t2);
            let contrib = term.div_int(2 * j + 1);
            if contrib.is_zero() {
                break;
            }
            sum = sum.add(&contrib);
            j += 1;
        }
        ln2.mul_int(k).add(&sum.mul_int(2))
    }

    /// `sin x` by its Taylor series after reduction to `[-π, π]`.
    pub fn sin(&self, pi: &Real) -> Real {
        self.check(pi);
        let two_pi = pi.mul_int(2);
        let turns = self.add(pi).div(&two_pi).floor_int();
        let x = self.sub(&two_pi.mul_bigint(&turns));
        let x2 = x.mul(&x);
        let mut term = x.clone();
        let mut sum = x;
        let mut k = 1i64;
        loop {
            term = term.mul(&x2).div_int((2 * k) * (2 * k + 1)).neg();
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
            k += 1;
        }
        sum
    }

    fn floor_int(&self) -> BigInt {
        self.mantissa.div_floor(&(BigInt::one() << self.bits))
    }

    fn mul_bigint(&self, n: &BigInt) -> Real {
        Real { mantissa: &self.mantissa * n, bits: self.bits }
    }

    /// Drops to a coarser precision.
    pub fn round_to(&self, bits: u32) -> Real {
        assert!(bits <= self.bits);
        Real { mantissa: &self.mantissa >> (self.bits - bits), bits }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.bits == other.bits).then(|| self.mantissa.cmp(&other.mantissa))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.bits as f64 * std::f64::consts::LOG10_2) as usize;
        f.write_str(&self.to_decimal_string(digits.saturating_sub(20).max(1)))
    }
}

fn shift_mantissa(m: &BigInt, by: i64) -> BigInt {
    if by >= 0 {
        m << by as u64
    } else {
        m >> (-by) as u64
    }
}

/// Writes `q = 2^k · y` with `2/3 <= y < 4/3`.
fn normalize_pow2(q: &Rational) -> (i64, Rational) {
    let k0 = q.numer().bits() as i64 - q.denom().bits() as i64;
    let two = Rational::from_integer(BigInt::from(2));
    let mut y = if k0 >= 0 {
        q / Rational::from_integer(BigInt::one() << k0 as u64)
    } else {
        q * Rational::from_integer(BigInt::one() << (-k0) as u64)
    };
    let mut k = k0;
    let four_thirds = Rational::new(BigInt::from(4), BigInt::from(3));
    let two_thirds = Rational::new(BigInt::from(2), BigInt::from(3));
    while y >= four_thirds {
        y /= &two;
        k += 1;
    }
    while y < two_thirds {
        y *= &two;
        k -= 1;
    }
    (k, y)
}

/// `atanh(p/q)` for `|p/q| < 1`, summed until the terms vanish.
fn atanh_ratio(p: &BigInt, q: &BigInt, bits: u32) -> Real {
    if p.is_zero() {
        return Real::zero(bits);
    }
    let p2 = p * p;
    let q2 = q * q;
    let mut power = (p << bits) / q;
    let mut sum = power.clone();
    let mut j = 1u64;
    loop {
        power = (&power * &p2) / &q2;
        let term = &power / BigInt::from(2 * j + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        j += 1;
    }
    Real { mantissa: sum, bits }
}

/// `atan(1/n)` for an integer `n >= 2`.
fn atan_inv(n: i64, bits: u32) -> Real {
    let n2 = BigInt::from(n * n);
    let mut power = (BigInt::one() << bits) / n;
    let mut sum = power.clone();
    let mut j = 1u64;
    loop {
        power /= &n2;
        let term = &power / BigInt::from(2 * j + 1);
        if term.is_zero() {
            break;
        }
        if j % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        j += 1;
    }
    Real { mantissa: sum, bits }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, rat};

    const BITS: u32 = 200;

    fn close(a: &Real, b: &Real, k: i32) -> bool {
        a.sub(b).abs().le_pow10(k)
    }

    #[test]
    fn pi_digits() {
        let pi = Real::pi(BITS);
        let reference = parse_rational(
            "314159265358979323846264338327950288419716939937510/100000000000000000000000000000000000000000000000000",
        )
        .unwrap();
        assert!(close(&pi, &Real::from_rational(&reference, BITS), -49));
    }

    #[test]
    fn ln_agrees_between_routes() {
        let ln2 = Real::ln2(BITS);
        for q in [rat(3, 1), rat(7, 5), rat(1, 30), rat(12345, 7)] {
            let exact = Real::ln_rational(&q, &ln2);
            let via_real = Real::from_rational(&q, BITS).ln(&ln2);
            assert!(close(&exact, &via_real, -55), "{q}");
        }
        assert!(Real::ln_rational(&rat(1, 1), &ln2).is_zero());
    }

    #[test]
    fn sin_of_sixth_pi_is_half() {
        let pi = Real::pi(BITS);
        let x = pi.div_int(6);
        assert!(close(&x.sin(&pi), &Real::from_rational(&rat(1, 2), BITS), -55));
        let y = pi.mul_int(7).div_int(2); // sin(7π/2) = -1
        assert!(close(&y.sin(&pi), &Real::from_int(-1, BITS), -55));
    }

    #[test]
    fn pow10_comparisons() {
        let x = Real::from_rational(&rat(1, 1000), BITS);
        assert!(x.le_pow10(-3));
        assert!(!x.le_pow10(-4));
        assert!(Real::from_int(5, BITS).le_pow10(1));
        assert_eq!(Real::zero(BITS).to_sci_string(), "0");
        assert_eq!(Real::from_rational(&rat(-1, 4), BITS).to_decimal_string(4), "-0.2500");
        assert!(x.to_sci_string().ends_with("e-3"));
    }
}
