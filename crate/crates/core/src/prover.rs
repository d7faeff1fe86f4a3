//! The γ-space relation lattice and constant certificates.
//!
//! On the grid `1/N` two families of exact identities hold:
//!
//! - reflection: `γ(j/N) γ(1 - j/N) = 1`, and `γ(1/2) = 1` when `N` is even;
//! - multiplication: for `n | N`, `n >= 2` and `x = k/N < 1/n`,
//!   `∏_{i<n} γ(x + i/n) = n^{1 - 2nx} γ(nx)`.
//!
//! The second is Gauss' multiplication formula applied to the numerator and
//! the denominator of `γ`: the denominator arguments `1 - x - i/n` are the
//! shifts of `y = 1/n - x` with `ny = 1 - nx`, so the `(2π)^{(n-1)/2}`
//! factors cancel and only `n^{-nx+1/2} / n^{-ny+1/2} = n^{1-2nx}` is left.
//!
//! A word whose exponent vector lies in the rational span of the relation
//! vectors equals a product of relation values raised to rational powers;
//! [`Lattice::prove`] finds such a combination by exact elimination.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{int, parse_rational, FactoredConstant, Rational};
use crate::gammaword::GammaWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RelationTag {
    Reflection { j: u64 },
    Half,
    Multiplication { n: u64, k: u64 },
}

impl fmt::Display for RelationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationTag::Reflection { j } => write!(f, "reflection({j})"),
            RelationTag::Half => f.write_str("half"),
            RelationTag::Multiplication { n, k } => write!(f, "multiplication({n},{k})"),
        }
    }
}

/// `∏ γ(j/N)^{v_j} = value`, exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub tag: RelationTag,
    pub word: GammaWord,
    pub value: FactoredConstant,
}

impl Relation {
    pub fn denominator(&self) -> u64 {
        self.word.denominator()
    }

    pub fn vector(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.word.exponents()
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<22} {} = {}", self.tag.to_string(), self.word.to_brace_string(), self.value)
    }
}

/// Reflection relations on `1/N`: one per pair `{j, N-j}`, plus `γ(1/2)`.
pub fn reflection_relations(n: u64) -> Vec<Relation> {
    assert!(n >= 2, "grid denominator must be at least 2");
    let mut out: Vec<Relation> = (1..n)
        .take_while(|&j| 2 * j < n)
        .map(|j| Relation {
            tag: RelationTag::Reflection { j },
            word: GammaWord::from_indices(n, [(j, 1), (n - j, 1)]).expect("indices in range"),
            value: FactoredConstant::one(),
        })
        .collect();
    if n.is_multiple_of(2) {
        out.push(Relation {
            tag: RelationTag::Half,
            word: GammaWord::from_indices(n, [(n / 2, 1)]).expect("index in range"),
            value: FactoredConstant::one(),
        });
    }
    out
}

/// Multiplication relations on `1/N` for every divisor `n >= 2` of `N`.
pub fn multiplication_relations(big_n: u64) -> Vec<Relation> {
    assert!(big_n >= 2, "grid denominator must be at least 2");
    let mut out = Vec::new();
    for n in (2..=big_n).filter(|n| big_n.is_multiple_of(*n)) {
        let step = big_n / n;
        for k in (1..).take_while(|k| k * n < big_n) {
            let terms = (0..n).map(|i| (k + i * step, 1)).chain([(n * k, -1)]);
            let word = GammaWord::from_indices(big_n, terms).expect("indices in range");
            let exponent = int(1) - Rational::new((2 * n * k).into(), big_n.into());
            out.push(Relation {
                tag: RelationTag::Multiplication { n, k },
                word,
                value: FactoredConstant::int_power(n, exponent),
            });
        }
    }
    out
}

/// All relations on `1/N`: reflections first, then multiplications.
pub fn relations(n: u64) -> Vec<Relation> {
    let mut out = reflection_relations(n);
    out.extend(multiplication_relations(n));
    out
}

/// A rational combination of relations reproducing a target exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub denominator: u64,
    pub coefficients: Vec<CertificateTerm>,
    pub derived_constant: FactoredConstant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTerm {
    pub relation: RelationTag,
    #[serde(with = "rational_string")]
    pub coefficient: Rational,
}

mod rational_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofOutcome {
    Proved(Certificate),
    NotInLattice,
}

impl ProofOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            ProofOutcome::Proved(c) => Some(c),
            ProofOutcome::NotInLattice => None,
        }
    }
}

/// Result of checking that every kernel combination has trivial value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCheck {
    pub consistent: bool,
    pub kernel_dimension: usize,
    /// A kernel combination whose value is not 1, if any.
    pub witness: Option<(Vec<CertificateTerm>, FactoredConstant)>,
}

/// Row of the echelon basis: `vector = Σ combo_r v_r` and
/// `constant = ∏ value_r^{combo_r}`.
#[derive(Clone, Debug)]
struct EchelonRow {
    pivot: usize,
    vector: Vec<Rational>,
    combo: Vec<Rational>,
    constant: FactoredConstant,
}

#[derive(Clone, Debug)]
struct KernelElement {
    combo: Vec<Rational>,
    constant: FactoredConstant,
}

/// Relations on `1/N` with a precomputed echelon basis of their span.
#[derive(Clone, Debug)]
pub struct Lattice {
    n: u64,
    relations: Vec<Relation>,
    index: HashMap<RelationTag, usize>,
    basis: Vec<EchelonRow>,
    kernel: Vec<KernelElement>,
}

struct Reduction {
    residual: Vec<Rational>,
    combo: Vec<Rational>,
    constant: FactoredConstant,
}

impl Lattice {
    /// Builds the relation list for `N` and eliminates it. Columns are taken
    /// in increasing index order with the first nonzero entry as pivot.
    pub fn new(n: u64) -> Lattice {
        let relations = relations(n);
        let index = relations.iter().enumerate().map(|(i, r)| (r.tag, i)).collect();
        let mut lattice = Lattice {
            n,
            relations,
            index,
            basis: Vec::new(),
            kernel: Vec::new(),
        };
        let count = lattice.relations.len();
        for r in 0..count {
            let v = dense(&lattice.relations[r].word);
            let red = lattice.reduce(v);
            let mut combo: Vec<Rational> = red.combo.iter().map(|c| -c).collect();
            combo[r] += Rational::one();
            let constant = lattice.relations[r].value.div(&red.constant);
            match red.residual.iter().position(|x| !x.is_zero()) {
                None => lattice.kernel.push(KernelElement { combo, constant }),
                Some(pivot) => {
                    let at = lattice.basis.partition_point(|row| row.pivot < pivot);
                    lattice.basis.insert(
                        at,
                        EchelonRow { pivot, vector: red.residual, combo, constant },
                    );
                }
            }
        }
        lattice
    }

    pub fn denominator(&self) -> u64 {
        self.n
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn kernel_dimension(&self) -> usize {
        self.kernel.len()
    }

    /// Subtracts basis rows from `target`, tracking the combination used.
    fn reduce(&self, mut residual: Vec<Rational>) -> Reduction {
        let mut combo = vec![Rational::zero(); self.relations.len()];
        let mut constant = FactoredConstant::one();
        for row in &self.basis {
            if residual[row.pivot].is_zero() {
                continue;
            }
            let f = &residual[row.pivot] / &row.vector[row.pivot];
            for (x, y) in residual.iter_mut().zip(&row.vector).skip(row.pivot) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (c, y) in combo.iter_mut().zip(&row.combo) {
                if !y.is_zero() {
                    *c += &f * y;
                }
            }
            constant = constant.mul(&row.constant.pow(&f));
        }
        Reduction { residual, combo, constant }
    }

    /// Certificate that `w` equals `coeff(w) · derived_constant`, or
    /// `NotInLattice`. Words on a coarser grid dividing `N` are rescaled.
    pub fn prove(&self, w: &GammaWord) -> ProofOutcome {
        assert!(
            self.n.is_multiple_of(w.denominator()),
            "word grid 1/{} does not embed in 1/{}",
            w.denominator(),
            self.n
        );
        let w = w.rescale(self.n);
        let red = self.reduce(dense(&w));
        if red.residual.iter().any(|x| !x.is_zero()) {
            return ProofOutcome::NotInLattice;
        }
        let coefficients = self.terms(&red.combo);
        ProofOutcome::Proved(Certificate {
            denominator: self.n,
            coefficients,
            derived_constant: red.constant,
        })
    }

    fn terms(&self, combo: &[Rational]) -> Vec<CertificateTerm> {
        combo
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| CertificateTerm { relation: self.relations[i].tag, coefficient: c.clone() })
            .collect()
    }

    /// Every combination of relations with zero exponent vector must have
    /// value 1; otherwise derived constants would depend on the solution.
    pub fn kernel_consistency(&self) -> KernelCheck {
        let witness = self
            .kernel
            .iter()
            .find(|k| !k.constant.is_one())
            .map(|k| (self.terms(&k.combo), k.constant.clone()));
        KernelCheck {
            consistent: witness.is_none(),
            kernel_dimension: self.kernel.len(),
            witness,
        }
    }

    /// Recombines the certificate's relations: returns the exponent vector
    /// `Σ c_r v_r` and the constant `∏ value_r^{c_r}`.
    pub fn replay(&self, cert: &Certificate) -> Option<(GammaWord, FactoredConstant)> {
        if cert.denominator != self.n {
            return None;
        }
        let mut acc: BTreeMap<u64, Rational> = BTreeMap::new();
        let mut constant = FactoredConstant::one();
        for term in &cert.coefficients {
            let rel = &self.relations[*self.index.get(&term.relation)?];
            for (j, e) in rel.vector() {
                *acc.entry(j).or_insert_with(Rational::zero) += &term.coefficient * int(e);
            }
            constant = constant.mul(&rel.value.pow(&term.coefficient));
        }
        let mut terms = Vec::new();
        for (j, e) in acc {
            if e.is_zero() {
                continue;
            }
            if !e.is_integer() {
                return None;
            }
            terms.push((j, i64::try_from(e.to_integer()).ok()?));
        }
        Some((GammaWord::from_indices(self.n, terms).ok()?, constant))
    }
}

fn dense(w: &GammaWord) -> Vec<Rational> {
    w.dense_exponents().into_iter().map(int).collect()
}

/// Proves `w` against the lattice for its own denominator.
pub fn prove_constant(w: &GammaWord) -> ProofOutcome {
    if w.denominator() < 2 {
        // Only the empty word lives on the grid 1/1.
        return ProofOutcome::Proved(Certificate {
            denominator: w.denominator(),
            coefficients: Vec::new(),
            derived_constant: FactoredConstant::one(),
        });
    }
    Lattice::new(w.denominator()).prove(w)
}

pub fn kernel_consistency(n: u64) -> KernelCheck {
    Lattice::new(n).kernel_consistency()
}

/// Lattices shared across verification tasks, built once per `N`.
#[derive(Debug, Default)]
pub struct LatticeCache {
    inner: Mutex<HashMap<u64, Arc<Lattice>>>,
}

impl LatticeCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: u64) -> Arc<Lattice> {
        if let Some(l) = self.inner.lock().expect("cache lock").get(&n) {
            return l.clone();
        }
        let built = Arc::new(Lattice::new(n));
        self.inner
            .lock()
            .expect("cache lock")
            .entry(n)
            .or_insert(built)
            .clone()
    }
}
