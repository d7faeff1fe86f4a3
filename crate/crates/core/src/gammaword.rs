//! Products `coeff · ∏ γ(j/N)^{e_j}` with `γ(x) = Γ(x)/Γ(1-x)`.
//!
//! Words live on a fixed grid `1/N`; indices are never reduced to lowest
//! terms, so words built from the same root system share one denominator
//! and index directly into the relation lattice for that `N`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::exact::{FactoredConstant, Rational};
use crate::numeric::{eval_word_ln, PrecisionContext, Real};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaWord {
    denominator: u64,
    exponents: BTreeMap<u64, i64>,
    coeff: FactoredConstant,
}

impl GammaWord {
    /// The empty word over `1/N`, value 1.
    pub fn empty(denominator: u64) -> Self {
        assert!(denominator >= 1, "denominator must be positive");
        GammaWord {
            denominator,
            exponents: BTreeMap::new(),
            coeff: FactoredConstant::one(),
        }
    }

    /// Builds a word from explicit `(j, e)` pairs over `1/N`, merging repeats.
    pub fn from_indices(
        denominator: u64,
        terms: impl IntoIterator<Item = (u64, i64)>,
    ) -> Result<Self, Error> {
        let mut w = GammaWord::empty(denominator);
        for (j, e) in terms {
            if j == 0 || j >= denominator {
                return Err(Error::OutOfUnitInterval(format!("{j}/{denominator}")));
            }
            w.add(j, e);
        }
        Ok(w)
    }

    fn add(&mut self, j: u64, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.exponents.entry(j).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exponents.remove(&j);
        }
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn coeff(&self) -> &FactoredConstant {
        &self.coeff
    }

    pub fn with_coeff(mut self, coeff: FactoredConstant) -> Self {
        self.coeff = coeff;
        self
    }

    /// `(j, e_j)` in increasing `j`.
    pub fn exponents(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exponents.iter().map(|(&j, &e)| (j, e))
    }

    pub fn exponent(&self, j: u64) -> i64 {
        self.exponents.get(&j).copied().unwrap_or(0)
    }

    /// No γ factors (the coefficient may still be nontrivial).
    pub fn is_constant(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Number of distinct γ factors.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty() && self.coeff.is_one()
    }

    /// Total absolute exponent `Σ |e_j|`.
    pub fn weight(&self) -> u64 {
        self.exponents.values().map(|e| e.unsigned_abs()).sum()
    }

    /// The same word over the finer grid `1/M`, `N | M`.
    pub fn rescale(&self, m: u64) -> GammaWord {
        assert!(m.is_multiple_of(self.denominator), "{m} is not a multiple of {}", self.denominator);
        let f = m / self.denominator;
        GammaWord {
            denominator: m,
            exponents: self.exponents.iter().map(|(&j, &e)| (j * f, e)).collect(),
            coeff: self.coeff.clone(),
        }
    }

    pub fn mul(&self, other: &GammaWord) -> GammaWord {
        let n = self.denominator.lcm(&other.denominator);
        let mut out = self.rescale(n);
        for (j, e) in other.rescale(n).exponents() {
            out.add(j, e);
        }
        out.coeff = self.coeff.mul(&other.coeff);
        out
    }

    pub fn inverse(&self) -> GammaWord {
        GammaWord {
            denominator: self.denominator,
            exponents: self.exponents.iter().map(|(&j, &e)| (j, -e)).collect(),
            coeff: self.coeff.inv(),
        }
    }

    /// Drops the `γ(1/2) = 1` factor and nothing else.
    pub fn without_half(&self) -> GammaWord {
        let mut out = self.clone();
        if self.denominator.is_multiple_of(2) {
            out.exponents.remove(&(self.denominator / 2));
        }
        out
    }

    /// Folds with `γ(x)γ(1-x) = 1` and `γ(1/2) = 1`: only indices `j < N/2`
    /// remain. The coefficient is unchanged since both relations have value 1.
    pub fn reduce_reflection(&self) -> GammaWord {
        let n = self.denominator;
        let mut out = GammaWord::empty(n).with_coeff(self.coeff.clone());
        for (j, e) in self.exponents() {
            if 2 * j == n {
                continue;
            }
            if 2 * j > n {
                out.add(n - j, -e);
            } else {
                out.add(j, e);
            }
        }
        out
    }

    pub fn eval_ln(&self, ctx: &PrecisionContext) -> Real {
        eval_word_ln(self, ctx)
    }

    /// Exponent vector indexed `1..N-1` (position `j-1`).
    pub fn dense_exponents(&self) -> Vec<i64> {
        let mut v = vec![0; self.denominator.saturating_sub(1) as usize];
        for (j, e) in self.exponents() {
            v[(j - 1) as usize] = e;
        }
        v
    }

    /// Brace notation `{a} = γ(a/N)`, e.g. `{2}/({1}{4})`.
    pub fn to_brace_string(&self) -> String {
        fn factor(j: u64, e: i64) -> String {
            if e == 1 {
                format!("{{{j}}}")
            } else {
                format!("{{{j}}}^{e}")
            }
        }
        let num: Vec<String> = self
            .exponents()
            .filter(|&(_, e)| e > 0)
            .map(|(j, e)| factor(j, e))
            .collect();
        let den: Vec<String> = self
            .exponents()
            .filter(|&(_, e)| e < 0)
            .map(|(j, e)| factor(j, -e))
            .collect();
        let mut s = String::new();
        if !self.coeff.is_one() {
            s.push_str(&format!("{} · ", self.coeff));
        }
        s.push_str(&if num.is_empty() { "1".to_string() } else { num.concat() });
        match den.len() {
            0 => {}
            1 => s.push_str(&format!("/{}", den[0])),
            _ => s.push_str(&format!("/({})", den.concat())),
        }
        s
    }
}

impl fmt::Display for GammaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}: {}", self.denominator, self.to_brace_string())
    }
}

/// Builds a word from `(argument, exponent)` pairs with arguments in `(0,1)`;
/// `N` is the least common multiple of the argument denominators.
pub fn word_from_terms(terms: &[(Rational, i64)]) -> Result<GammaWord, Error> {
    let mut n = BigInt::one();
    for (x, _) in terms {
        if !x.is_positive() || x >= &Rational::one() {
            return Err(Error::OutOfUnitInterval(x.to_string()));
        }
        n = n.lcm(x.denom());
    }
    let n_u = n
        .to_u64()
        .ok_or_else(|| Error::Parse(format!("denominator {n} too large")))?;
    let indices = terms.iter().map(|(x, e)| {
        let j = (x.numer() * (&n / x.denom()))
            .to_u64()
            .expect("index below denominator");
        (j, *e)
    });
    GammaWord::from_indices(n_u, indices)
}

pub fn word_mul(a: &GammaWord, b: &GammaWord) -> GammaWord {
    a.mul(b)
}

pub fn reduce_reflection(w: &GammaWord) -> GammaWord {
    w.reduce_reflection()
}

#[derive(Serialize, Deserialize)]
struct WordTerm {
    j: u64,
    exponent: i64,
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    #[serde(rename = "N")]
    n: u64,
    terms: Vec<WordTerm>,
    coeff: FactoredConstant,
}

impl Serialize for GammaWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WordRepr {
            n: self.denominator,
            terms: self
                .exponents()
                .map(|(j, exponent)| WordTerm { j, exponent })
                .collect(),
            coeff: self.coeff.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GammaWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = WordRepr::deserialize(d)?;
        if repr.n == 0 {
            return Err(serde::de::Error::custom("N must be positive"));
        }
        let w = GammaWord::from_indices(repr.n, repr.terms.iter().map(|t| (t.j, t.exponent)))
            .map_err(serde::de::Error::custom)?;
        Ok(w.with_coeff(repr.coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn word(n: u64, terms: &[(u64, i64)]) -> GammaWord {
        GammaWord::from_indices(n, terms.iter().copied()).unwrap()
    }

    #[test]
    fn from_terms_examples() {
        let w = word_from_terms(&[(rat(1, 3), -1), (rat(2, 3), -1)]).unwrap();
        assert_eq!(w, word(3, &[(1, -1), (2, -1)]));

        let w = word_from_terms(&[(rat(1, 6), -1), (rat(1, 3), 1), (rat(2, 3), -1)]).unwrap();
        assert_eq!(w, word(6, &[(1, -1), (2, 1), (4, -1)]));

        let w = word_from_terms(&[(rat(1, 2), 5)]).unwrap();
        assert_eq!(w, word(2, &[(1, 5)]));

        assert!(word_from_terms(&[(rat(1, 1), 1)]).is_err());
        assert!(word_from_terms(&[(rat(0, 1), 1)]).is_err());
        assert!(word_from_terms(&[(rat(3, 2), 1)]).is_err());
        // A_2, α_1 raw terms: γ(1/3)^{-2} γ(1/3) γ(2/3)^{-1}.
        let w = word_from_terms(&[(rat(1, 3), -2), (rat(1, 3), 1), (rat(2, 3), -1)]).unwrap();
        assert_eq!(w, word(3, &[(1, -1), (2, -1)]));
    }

    #[test]
    fn mul_examples() {
        let a = word(6, &[(1, 2), (5, -1)]);
        let prod = a.mul(&a.inverse());
        assert!(prod.is_empty());

        let prod = word(3, &[(1, 1)]).mul(&word(2, &[(1, 1)]));
        assert_eq!(prod, word(6, &[(2, 1), (3, 1)]));

        let c = FactoredConstant::int_power(2, rat(1, 2));
        let a = word(4, &[(1, 1)]).with_coeff(c.clone());
        let b = word(4, &[(3, 1)]).with_coeff(c);
        assert_eq!(a.mul(&b).coeff(), &FactoredConstant::int_power(2, int(1)));
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(word(3, &[(2, -1)]).reduce_reflection(), word(3, &[(1, 1)]));
        assert!(word(2, &[(1, 7)]).reduce_reflection().is_empty());
        for n in 2..13u64 {
            let size = n + 1;
            for i in 1..=n {
                let w = word(size, &[(i, -1), (size - i, -1)]);
                assert!(w.reduce_reflection().is_empty(), "A_{n}, i={i}");
            }
        }
    }

    #[test]
    fn eval_examples() {
        let ctx = PrecisionContext::new(40).unwrap();
        assert!(GammaWord::empty(5).eval_ln(&ctx).is_zero());
        assert!(word(2, &[(1, 1)]).eval_ln(&ctx).abs().le_pow10(-40));
        // G2 γ'(α_1) = 2^{-1/3}
        let w = word(6, &[(1, -1), (2, 1), (4, -1)]);
        let want = ctx.ln2().div_int(3).neg();
        assert!(w.eval_ln(&ctx).sub(&want).abs().le_pow10(-38));
    }

    #[test]
    fn reflection_pairs_vanish_numerically() {
        let ctx = PrecisionContext::new(30).unwrap();
        for n in 2..=30u64 {
            for j in 1..n {
                let w = word(n, &[(j, 1), (n - j, 1)]);
                assert!(w.eval_ln(&ctx).abs().le_pow10(-28), "{n} {j}");
            }
        }
    }

    #[test]
    fn brace_notation() {
        assert_eq!(word(6, &[(1, -1), (2, 1), (4, -1)]).to_brace_string(), "{2}/({1}{4})");
        assert_eq!(word(12, &[(1, -2), (3, 3)]).to_brace_string(), "{3}^3/{1}^2");
        assert_eq!(GammaWord::empty(4).to_brace_string(), "1");
        let w = word(6, &[(1, 1)]).with_coeff(FactoredConstant::int_power(2, rat(1, 3)));
        assert_eq!(w.to_string(), "N=6: 2^(1/3) · {1}");
    }

    #[test]
    fn serde_shape() {
        let w = word(6, &[(1, -1), (2, 1)]);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"N":6,"terms":[{"j":1,"exponent":-1},{"j":2,"exponent":1}],"coeff":[]}"#);
        assert_eq!(serde_json::from_str::<GammaWord>(&json).unwrap(), w);
        assert!(serde_json::from_str::<GammaWord>(r#"{"N":6,"terms":[{"j":6,"exponent":1}],"coeff":[]}"#).is_err());
    }

    fn arb_word() -> impl Strategy<Value = GammaWord> {
        (2u64..25).prop_flat_map(|n| {
            proptest::collection::vec((1..n, -3i64..4), 0..8)
                .prop_map(move |terms| GammaWord::from_indices(n, terms).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn reflection_is_idempotent(w in arb_word()) {
            let once = w.reduce_reflection();
            prop_assert_eq!(once.reduce_reflection(), once.clone());
            for (j, _) in once.exponents() {
                prop_assert!(2 * j < once.denominator());
            }
        }

        #[test]
        fn mul_commutes_and_associates(a in arb_word(), b in arb_word(), c in arb_word()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn reflection_preserves_value(w in arb_word()) {
            let ctx = PrecisionContext::new(25).unwrap();
            let before = w.eval_ln(&ctx);
            let after = w.reduce_reflection().eval_ln(&ctx);
            prop_assert!(before.sub(&after).abs().le_pow10(-22));
        }
    }
}
