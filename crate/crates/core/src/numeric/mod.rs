//! Arbitrary-precision `ln Γ` on `(0, 1)` and numeric evaluation of γ-words.
//!
//! `ln Γ(x)` is computed by shifting `x` to `z = x + m` and summing the
//! Stirling series
//!
//! ```text
//! ln Γ(z) = (z - 1/2) ln z - z + ln(2π)/2 + Σ_{k=1..K} B_{2k} / (2k (2k-1) z^{2k-1}) + R_K
//! |R_K| <= |B_{2K+2}| / ((2K+1)(2K+2) z^{2K+1})
//! ```
//!
//! then undoing the shift with `ln Γ(x) = ln Γ(z) - ln ∏_{k<m} (x + k)`; the
//! product is an exact rational, so the shift costs a single logarithm.
//! `m` and `K` are chosen when the context is built so that the remainder
//! bound, evaluated exactly in rationals at `z = m`, is at most
//! `10^{-(digits+5)}`.

mod real;

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use real::Real;

use crate::exact::{int, Rational};
use crate::gammaword::GammaWord;
use crate::Error;

/// Guard bits carried beyond the requested decimal precision.
const GUARD_BITS: u32 = 64;

/// Exact Bernoulli numbers `B_0..=B_n` by the standard recurrence
/// `Σ_{k=0}^{m} C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        if m > 1 && m % 2 == 1 {
            b.push(Rational::zero());
            continue;
        }
        let mut binom = BigInt::one(); // C(m+1, 0)
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += bk * Rational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / int(m as i64 + 1));
    }
    b
}

/// Working precision and the Stirling parameters derived from it.
///
/// Immutable after construction apart from a memo of `ln Γ` values, which is
/// guarded by a lock and only ever gains entries.
#[derive(Debug)]
pub struct PrecisionContext {
    decimal_digits: u32,
    bits: u32,
    shift_count: u32,
    stirling_terms: usize,
    /// `B_{2k} / (2k (2k-1))` for `k = 1..=K`.
    coefficients: Vec<Real>,
    ln2: Real,
    pi: Real,
    ln_pi: Real,
    half_ln_two_pi: Real,
    memo: RwLock<HashMap<Rational, Real>>,
}

impl PrecisionContext {
    pub fn new(decimal_digits: u32) -> Result<Self, Error> {
        if decimal_digits < 10 {
            return Err(Error::Precision(decimal_digits));
        }
        let bits = (decimal_digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS;
        let target = Rational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(10), decimal_digits as usize + 5),
        );
        let (shift_count, stirling_terms, bernoulli) = choose_parameters(&target);

        let ln2 = Real::ln2(bits);
        let pi = Real::pi(bits);
        let ln_pi = pi.ln(&ln2);
        let half_ln_two_pi = ln2.add(&ln_pi).div_int(2);
        let coefficients = (1..=stirling_terms)
            .map(|k| {
                let denom = int((2 * k * (2 * k - 1)) as i64);
                Real::from_rational(&(&bernoulli[2 * k] / denom), bits)
            })
            .collect();

        Ok(PrecisionContext {
            decimal_digits,
            bits,
            shift_count,
            stirling_terms,
            coefficients,
            ln2,
            pi,
            ln_pi,
            half_ln_two_pi,
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn decimal_digits(&self) -> u32 {
        self.decimal_digits
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn shift_count(&self) -> u32 {
        self.shift_count
    }

    pub fn stirling_terms(&self) -> usize {
        self.stirling_terms
    }

    pub fn zero(&self) -> Real {
        Real::zero(self.bits)
    }

    pub fn from_rational(&self, q: &Rational) -> Real {
        Real::from_rational(q, self.bits)
    }

    pub fn pi(&self) -> &Real {
        &self.pi
    }

    pub fn ln_pi(&self) -> &Real {
        &self.ln_pi
    }

    pub fn ln2(&self) -> &Real {
        &self.ln2
    }

    pub fn ln_rational(&self, q: &Rational) -> Real {
        Real::ln_rational(q, &self.ln2)
    }

    /// `ln x` for a positive fixed-point value at this precision.
    pub fn ln(&self, x: &Real) -> Real {
        x.ln(&self.ln2)
    }

    /// `ln Γ(z)` for rational `z >= shift_count` by the truncated Stirling
    /// series.
    fn stirling(&self, z: &Rational) -> Real {
        let ln_z = self.ln_rational(z);
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let main = ln_z
            .mul_rational(&(z - &half))
            .sub(&self.from_rational(z))
            .add(&self.half_ln_two_pi);

        let w = self.from_rational(&z.recip());
        let w2 = w.mul(&w);
        let mut acc = self.zero();
        for c in self.coefficients.iter().rev() {
            acc = c.add(&w2.mul(&acc));
        }
        main.add(&w.mul(&acc))
    }

    /// `ln Γ(x)` for `0 < x < 1`, absolute error at most `10^{-digits}`.
    pub fn ln_gamma(&self, x: &Rational) -> Result<Real, Error> {
        if !x.is_positive() || x >= &Rational::one() {
            return Err(Error::OutOfUnitInterval(x.to_string()));
        }
        if let Some(v) = self.memo.read().expect("memo lock").get(x) {
            return Ok(v.clone());
        }
        let m = self.shift_count as i64;
        let z = x + int(m);
        let product = (0..m).fold(Rational::one(), |acc, k| acc * (x + int(k)));
        let value = self.stirling(&z).sub(&self.ln_rational(&product));
        self.memo
            .write()
            .expect("memo lock")
            .insert(x.clone(), value.clone());
        Ok(value)
    }

    /// `ln γ(x) = ln Γ(x) - ln Γ(1 - x)` for `0 < x < 1`.
    pub fn ln_gamma_ratio(&self, x: &Rational) -> Result<Real, Error> {
        let a = self.ln_gamma(x)?;
        let b = self.ln_gamma(&(Rational::one() - x))?;
        Ok(a.sub(&b))
    }

    /// `10^{-k}` at this precision.
    pub fn pow10_neg(&self, k: u32) -> Real {
        self.from_rational(&Rational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(10), k as usize),
        ))
    }
}

/// Smallest shift `m` (then smallest `K`) whose exact remainder bound
/// at `z = m` meets `target`. Returns `(m, K, Bernoulli numbers up to 2K+2)`.
fn choose_parameters(target: &Rational) -> (u32, usize, Vec<Rational>) {
    let mut bernoulli = bernoulli_numbers(8);
    let mut m: u32 = 4;
    loop {
        let z = int(m as i64);
        // The bound first shrinks then grows in K; stop at the turn.
        let mut prev: Option<Rational> = None;
        let mut k = 1usize;
        loop {
            if bernoulli.len() < 2 * k + 3 {
                bernoulli = bernoulli_numbers(2 * k + 40);
            }
            let b = bernoulli[2 * k + 2].abs();
            let denom = int(((2 * k + 1) * (2 * k + 2)) as i64)
                * num_traits::pow(z.clone(), 2 * k + 1);
            let bound = b / denom;
            if &bound <= target {
                bernoulli.truncate(2 * k + 3);
                return (m, k, bernoulli);
            }
            if prev.as_ref().is_some_and(|p| &bound >= p) {
                break;
            }
            prev = Some(bound);
            k += 1;
        }
        m += (m / 4).max(1);
    }
}

/// `ln Γ(x)` for `0 < x < 1`.
pub fn ln_gamma(x: &Rational, ctx: &PrecisionContext) -> Result<Real, Error> {
    ctx.ln_gamma(x)
}

/// `Σ e_j (ln Γ(j/N) - ln Γ(1 - j/N)) + ln coeff`, error at most
/// `(2 Σ |e_j| + 1) · 10^{-digits}`.
pub fn eval_word_ln(w: &GammaWord, ctx: &PrecisionContext) -> Real {
    let n = BigInt::from(w.denominator());
    let mut acc = w.coeff().ln(ctx);
    for (j, e) in w.exponents() {
        let x = Rational::new(BigInt::from(j), n.clone());
        let term = ctx
            .ln_gamma_ratio(&x)
            .expect("word indices lie strictly inside (0, N)");
        acc = acc.add(&term.mul_int(e));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, rat};

    #[test]
    fn bernoulli_small_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
        assert_eq!(b[8], rat(-1, 30));
        assert_eq!(b[10], rat(5, 66));
        assert_eq!(b[12], rat(-691, 2730));
        assert!(b[11].is_zero());
    }

    #[test]
    fn context_rejects_low_precision() {
        assert!(PrecisionContext::new(9).is_err());
        let ctx = PrecisionContext::new(10).unwrap();
        assert!(ctx.shift_count() >= 4);
        assert!(ctx.stirling_terms() >= 1);
    }

    #[test]
    fn ln_gamma_half_is_half_ln_pi() {
        let ctx = PrecisionContext::new(50).unwrap();
        let got = ctx.ln_gamma(&rat(1, 2)).unwrap();
        let want = ctx.ln_pi().div_int(2);
        assert!(got.sub(&want).abs().le_pow10(-50));
    }

    #[test]
    fn ln_gamma_reflection_at_third() {
        // Γ(1/3)Γ(2/3) = 2π/√3
        let ctx = PrecisionContext::new(50).unwrap();
        let lhs = ctx
            .ln_gamma(&rat(1, 3))
            .unwrap()
            .add(&ctx.ln_gamma(&rat(2, 3)).unwrap());
        let rhs = ctx
            .ln2()
            .add(ctx.ln_pi())
            .sub(&ctx.ln_rational(&rat(3, 1)).div_int(2));
        assert!(lhs.sub(&rhs).abs().le_pow10(-50));
    }

    #[test]
    fn ln_gamma_sixth_matches_reference() {
        // mpmath.loggamma(mpf(1)/6) at 80 digits, truncated to 60.
        let reference = parse_rational(
            "1716733435078240460527846309587930757279377487105405563873/1000000000000000000000000000000000000000000000000000000000",
        )
        .unwrap();
        let ctx = PrecisionContext::new(50).unwrap();
        let got = ctx.ln_gamma(&rat(1, 6)).unwrap();
        assert!(got.sub(&ctx.from_rational(&reference)).abs().le_pow10(-50));
    }

    #[test]
    fn rejects_arguments_outside_unit_interval() {
        let ctx = PrecisionContext::new(20).unwrap();
        assert!(ctx.ln_gamma(&rat(0, 1)).is_err());
        assert!(ctx.ln_gamma(&rat(1, 1)).is_err());
        assert!(ctx.ln_gamma(&rat(-1, 3)).is_err());
        assert!(ctx.ln_gamma(&rat(4, 3)).is_err());
    }
}
