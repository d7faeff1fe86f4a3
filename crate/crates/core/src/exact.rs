//! Exact rational arithmetic and the multiplicative constant domain.
//!
//! A [`FactoredConstant`] is a positive real of the form
//! `∏ p^{e_p} · π^{e_π}` with rational exponents. Every constant produced by
//! the reflection and multiplication formulas in γ-space lives in this group,
//! so equality of constants is decided exactly by comparing exponent maps.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numeric::{PrecisionContext, Real};
use crate::Error;

/// Unbounded rational, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `n / d` from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Least common multiple of the denominators of `values` (1 when empty).
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Prime factorization by trial division. Returns `(prime, multiplicity)`.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u64)> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let mut count = 0u64;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        if count > 0 {
            out.push((p.clone(), count));
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if rest > BigUint::one() {
        out.push((rest, 1));
    }
    out
}

/// A base in a factored constant: a prime or the symbol π.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    Prime(BigUint),
    Pi,
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Prime(p) => write!(f, "{p}"),
            Base::Pi => f.write_str("pi"),
        }
    }
}

/// The positive real `∏ p^{e_p} · π^{e_π}`, in canonical form: keys are
/// prime and no stored exponent is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FactoredConstant {
    primes: BTreeMap<BigUint, Rational>,
    pi: Rational,
}

impl FactoredConstant {
    /// The constant 1.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.primes.is_empty() && self.pi.is_zero()
    }

    /// `π^e`.
    pub fn pi_power(e: Rational) -> Self {
        FactoredConstant {
            primes: BTreeMap::new(),
            pi: e,
        }
    }

    /// `base^exponent` for a positive rational base, factored into primes.
    pub fn factor_power(base: &Rational, exponent: &Rational) -> Result<Self, Error> {
        if !base.is_positive() {
            return Err(Error::NonPositiveBase(base.to_string()));
        }
        let mut out = Self::one();
        for (p, m) in factorize(base.numer().magnitude()) {
            out.add_exponent(Base::Prime(p), exponent * int(m as i64));
        }
        for (p, m) in factorize(base.denom().magnitude()) {
            out.add_exponent(Base::Prime(p), -(exponent * int(m as i64)));
        }
        Ok(out)
    }

    /// `base^exponent` for a positive integer base.
    pub fn int_power(base: u64, exponent: Rational) -> Self {
        assert!(base > 0, "base must be positive");
        Self::factor_power(&int(base as i64), &exponent).expect("positive base")
    }

    /// Adds `e` to the exponent of `base`. A composite prime key is the
    /// caller's bug; use [`FactoredConstant::factor_power`] for general bases.
    fn add_exponent(&mut self, base: Base, e: Rational) {
        if e.is_zero() {
            return;
        }
        match base {
            Base::Pi => self.pi += e,
            Base::Prime(p) => {
                let slot = self.primes.entry(p.clone()).or_insert_with(Rational::zero);
                *slot += e;
                if slot.is_zero() {
                    self.primes.remove(&p);
                }
            }
        }
    }

    /// Exponent of `base` (zero when absent).
    pub fn exponent(&self, base: &Base) -> Rational {
        match base {
            Base::Pi => self.pi.clone(),
            Base::Prime(p) => self.primes.get(p).cloned().unwrap_or_else(Rational::zero),
        }
    }

    /// Exponent of the prime `p`.
    pub fn prime_exponent(&self, p: u64) -> Rational {
        self.exponent(&Base::Prime(BigUint::from(p)))
    }

    pub fn pi_exponent(&self) -> &Rational {
        &self.pi
    }

    /// Entries in canonical order: primes ascending, then π.
    pub fn entries(&self) -> impl Iterator<Item = (Base, &Rational)> {
        self.primes
            .iter()
            .map(|(p, e)| (Base::Prime(p.clone()), e))
            .chain((!self.pi.is_zero()).then_some((Base::Pi, &self.pi)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, e) in other.entries() {
            out.add_exponent(b, e.clone());
        }
        out
    }

    pub fn pow(&self, e: &Rational) -> Self {
        if e.is_zero() {
            return Self::one();
        }
        FactoredConstant {
            primes: self
                .primes
                .iter()
                .map(|(p, x)| (p.clone(), x * e))
                .collect(),
            pi: &self.pi * e,
        }
    }

    pub fn inv(&self) -> Self {
        self.pow(&int(-1))
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Natural logarithm at the context's working precision.
    pub fn ln(&self, ctx: &PrecisionContext) -> Real {
        let mut acc = ctx.zero();
        for (b, e) in self.entries() {
            let ln_b = match b {
                Base::Pi => ctx.ln_pi().clone(),
                Base::Prime(p) => ctx.ln_rational(&Rational::from_integer(BigInt::from(p))),
            };
            acc = acc.add(&ln_b.mul_rational(e));
        }
        acc
    }
}

/// `base^exponent` in canonical factored form.
pub fn factor_power(base: &Rational, exponent: &Rational) -> Result<FactoredConstant, Error> {
    FactoredConstant::factor_power(base, exponent)
}

pub fn const_mul(a: &FactoredConstant, b: &FactoredConstant) -> FactoredConstant {
    a.mul(b)
}

pub fn const_pow(a: &FactoredConstant, e: &Rational) -> FactoredConstant {
    a.pow(e)
}

/// `ln a` with absolute error at most `10^{-precision}`.
pub fn const_ln(a: &FactoredConstant, precision: u32) -> Result<Real, Error> {
    let ctx = PrecisionContext::new(precision)?;
    Ok(a.ln(&ctx))
}

fn fmt_exponent(e: &Rational) -> String {
    if e.is_integer() && e.is_positive() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

impl fmt::Display for FactoredConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .entries()
            .map(|(b, e)| {
                if e.is_one() {
                    b.to_string()
                } else {
                    format!("{b}^{}", fmt_exponent(e))
                }
            })
            .collect();
        f.write_str(&parts.join("·"))
    }
}

#[derive(Serialize, Deserialize)]
struct ConstEntry {
    base: String,
    num: String,
    den: String,
}

impl Serialize for FactoredConstant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<ConstEntry> = self
            .entries()
            .map(|(b, e)| ConstEntry {
                base: b.to_string(),
                num: e.numer().to_string(),
                den: e.denom().to_string(),
            })
            .collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FactoredConstant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<ConstEntry>::deserialize(d)?;
        let mut out = FactoredConstant::one();
        for entry in entries {
            let e = parse_rational(&format!("{}/{}", entry.num, entry.den))
                .map_err(D::Error::custom)?;
            if entry.base == "pi" {
                out.add_exponent(Base::Pi, e);
                continue;
            }
            let p = BigUint::from_str(&entry.base)
                .map_err(|_| D::Error::custom(format!("bad base `{}`", entry.base)))?;
            let factors = factorize(&p);
            if factors.len() != 1 || factors[0].1 != 1 {
                return Err(D::Error::custom(format!("base `{p}` is not prime")));
            }
            out.add_exponent(Base::Prime(p), e);
        }
        Ok(out)
    }
}

/// Converts a small rational to `f64` (for display only).
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
