//! Irreducible reduced root systems in their standard coordinate
//! realizations, with the combinatorial data the Gamma-product formulas use.
//!
//! Simple roots follow the Bourbaki planches; the inner product is the plain
//! coordinate dot product of that realization, never rescaled. This matters:
//! comarks and `h∨` below are defined as `(α_i|α_i) n_i / 2` in that
//! normalization, which differs from the usual dual Coxeter number for
//! `B`, `C`, `F₄` and `G₂`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{int, rat, Rational};
use crate::linalg::solve_columns;
use crate::Error;

/// Positive roots beyond this count mean the input was not a simple system.
const ROOT_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    /// Admissible ranks `(min, max)`; `None` for unbounded families.
    pub fn rank_bounds(self) -> (u32, Option<u32>) {
        match self {
            Family::A => (1, None),
            Family::B | Family::C => (2, None),
            Family::D => (3, None),
            Family::E => (6, Some(8)),
            Family::F => (4, Some(4)),
            Family::G => (2, Some(2)),
        }
    }

    pub fn admits(self, rank: u32) -> bool {
        let (lo, hi) = self.rank_bounds();
        rank >= lo && hi.is_none_or(|h| rank <= h)
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(Error::Parse(format!("unknown family `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootSystemId {
    family: Family,
    rank: u32,
}

impl RootSystemId {
    pub fn new(family: Family, rank: u32) -> Result<Self, Error> {
        if !family.admits(rank) {
            return Err(Error::InadmissibleSystem { family, rank });
        }
        Ok(RootSystemId { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A vector in the ambient space of a planche realization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordVector(pub Vec<Rational>);

impl CoordVector {
    pub fn zero(dim: usize) -> Self {
        CoordVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        CoordVector(xs.iter().map(|&x| int(x)).collect())
    }

    /// `ε_i` (1-based) in dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i - 1] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        CoordVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        CoordVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CoordVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for CoordVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for CoordVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoordVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        parts
            .iter()
            .map(|p| crate::exact::parse_rational(p))
            .collect::<Result<Vec<_>, _>>()
            .map(CoordVector)
            .map_err(serde::de::Error::custom)
    }
}

/// Exact dot product.
pub fn inner(u: &CoordVector, v: &CoordVector) -> Result<Rational, Error> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch(u.dim(), v.dim()));
    }
    Ok(u.0.iter().zip(&v.0).map(|(a, b)| a * b).sum())
}

fn dot(u: &CoordVector, v: &CoordVector) -> Rational {
    inner(u, v).expect("vectors of one realization share a dimension")
}

/// `α∨ = 2α/(α|α)`.
pub fn coroot(alpha: &CoordVector) -> Result<CoordVector, Error> {
    let norm = dot(alpha, alpha);
    if norm.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(alpha.scale(&(int(2) / norm)))
}

/// Simple roots `α_1..α_r` of the planche realization.
pub fn simple_roots(id: RootSystemId) -> Vec<CoordVector> {
    let n = id.rank as usize;
    let chain = |dim: usize, count: usize| -> Vec<CoordVector> {
        (1..=count)
            .map(|i| CoordVector::unit(dim, i).sub(&CoordVector::unit(dim, i + 1)))
            .collect()
    };
    match id.family {
        Family::A => chain(n + 1, n),
        Family::B => {
            let mut s = chain(n, n - 1);
            s.push(CoordVector::unit(n, n));
            s
        }
        Family::C => {
            let mut s = chain(n, n - 1);
            s.push(CoordVector::unit(n, n).scale(&int(2)));
            s
        }
        Family::D => {
            let mut s = chain(n, n - 1);
            s.push(CoordVector::unit(n, n - 1).add(&CoordVector::unit(n, n)));
            s
        }
        Family::E => {
            let half = rat(1, 2);
            let mut a1 = CoordVector(vec![half.clone(); 8]);
            for k in 1..7 {
                a1.0[k] = -half.clone();
            }
            let mut s = vec![
                a1,
                CoordVector::unit(8, 1).add(&CoordVector::unit(8, 2)),
            ];
            for i in 1..=(n - 2) {
                s.push(CoordVector::unit(8, i + 1).sub(&CoordVector::unit(8, i)));
            }
            s
        }
        Family::F => {
            let h = rat(1, 2);
            vec![
                CoordVector::unit(4, 2).sub(&CoordVector::unit(4, 3)),
                CoordVector::unit(4, 3).sub(&CoordVector::unit(4, 4)),
                CoordVector::unit(4, 4),
                CoordVector(vec![h.clone(), -h.clone(), -h.clone(), -h]),
            ]
        }
        Family::G => vec![
            CoordVector::from_ints(&[1, -1, 0]),
            CoordVector::from_ints(&[-2, 1, 1]),
        ],
    }
}

/// A positive root with its coordinates in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub vector: CoordVector,
    pub coefficients: Vec<i64>,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.coefficients.iter().sum()
    }
}

/// Closes the simple roots under root strings: `β + α_i` is a root iff
/// `p - ⟨β, α_i∨⟩ > 0`, where `p` is the largest `k` with `β - kα_i` a root.
/// Results are ordered by height, then by coefficient vector.
pub fn generate_positive_roots(simple: &[CoordVector]) -> Result<Vec<PositiveRoot>, Error> {
    let r = simple.len();
    let norms: Vec<Rational> = simple.iter().map(|a| dot(a, a)).collect();
    if norms.iter().any(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<PositiveRoot> = (0..r)
        .map(|i| {
            let mut c = vec![0; r];
            c[i] = 1;
            known.insert(c.clone());
            PositiveRoot { vector: simple[i].clone(), coefficients: c }
        })
        .collect();
    let mut all = Vec::new();
    while !layer.is_empty() {
        let mut next: BTreeMap<Vec<i64>, CoordVector> = BTreeMap::new();
        for beta in &layer {
            for i in 0..r {
                let mut p = 0i64;
                let mut c = beta.coefficients.clone();
                loop {
                    c[i] -= 1;
                    if c[i] < 0 || !known.contains(&c) {
                        break;
                    }
                    p += 1;
                }
                let pairing = int(2) * dot(&beta.vector, &simple[i]) / &norms[i];
                if !pairing.is_integer() {
                    return Err(Error::InvalidSimpleRoots(format!(
                        "non-integral pairing {pairing} with simple root {}",
                        i + 1
                    )));
                }
                let q = int(p) - pairing;
                if q.is_positive() {
                    let mut up = beta.coefficients.clone();
                    up[i] += 1;
                    next.entry(up).or_insert_with(|| beta.vector.add(&simple[i]));
                }
            }
        }
        all.append(&mut layer);
        if all.len() + next.len() > ROOT_LIMIT {
            return Err(Error::RootClosureDiverged(ROOT_LIMIT));
        }
        for c in next.keys() {
            known.insert(c.clone());
        }
        layer = next
            .into_iter()
            .map(|(coefficients, vector)| PositiveRoot { vector, coefficients })
            .collect();
    }
    all.sort_by(|a, b| {
        a.height()
            .cmp(&b.height())
            .then_with(|| b.coefficients.cmp(&a.coefficients))
    });
    Ok(all)
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub id: RootSystemId,
    pub simple_roots: Vec<CoordVector>,
    /// `α_0 = -θ`.
    pub alpha0: CoordVector,
    pub positive_roots: Vec<PositiveRoot>,
    /// `n_0..n_r`.
    pub marks: Vec<Rational>,
    /// `n_i∨ = (α_i|α_i) n_i / 2`.
    pub comarks: Vec<Rational>,
    /// `n_i∨∨ = (α_i|α_i) n_i∨ / 2`.
    pub double_comarks: Vec<Rational>,
    pub h: u64,
    pub h_check: Rational,
    pub rho: CoordVector,
    pub rho_check: CoordVector,
    pub simply_laced: bool,
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// `α_i` for `0 <= i <= r`.
    pub fn alpha(&self, i: usize) -> &CoordVector {
        if i == 0 {
            &self.alpha0
        } else {
            &self.simple_roots[i - 1]
        }
    }

    pub fn highest_root(&self) -> CoordVector {
        self.alpha0.scale(&int(-1))
    }

    pub fn inner(&self, u: &CoordVector, v: &CoordVector) -> Rational {
        dot(u, v)
    }
}

/// Builds the root system `id` with all derived data.
pub fn build(id: RootSystemId) -> Result<RootSystem, Error> {
    let simple = simple_roots(id);
    let positive = generate_positive_roots(&simple)?;
    let (theta, marks_r) = highest_root(&simple, &positive)?;
    let dim = simple[0].dim();

    let alpha0 = theta.scale(&int(-1));
    let mut marks = vec![Rational::one()];
    marks.extend(marks_r);
    let norm = |i: usize| {
        let a = if i == 0 { &alpha0 } else { &simple[i - 1] };
        dot(a, a)
    };
    let comarks: Vec<Rational> = (0..marks.len())
        .map(|i| norm(i) * &marks[i] / int(2))
        .collect();
    let double_comarks: Vec<Rational> = (0..marks.len())
        .map(|i| norm(i) * &comarks[i] / int(2))
        .collect();
    let h_sum: Rational = marks.iter().sum();
    let h = h_sum
        .to_integer()
        .to_u64()
        .expect("marks are positive integers");
    let h_check: Rational = comarks.iter().sum();

    let (rho, rho_check) = weyl_vectors(dim, &positive)?;
    let long = dot(&theta, &theta);
    let simply_laced = positive.iter().all(|a| dot(&a.vector, &a.vector) == long);

    Ok(RootSystem {
        id,
        simple_roots: simple,
        alpha0,
        positive_roots: positive,
        marks,
        comarks,
        double_comarks,
        h,
        h_check,
        rho,
        rho_check,
        simply_laced,
    })
}

/// The root of maximal height and its marks, solved exactly from
/// `θ = Σ n_i α_i`.
pub fn highest_root(
    simple: &[CoordVector],
    positive: &[PositiveRoot],
) -> Result<(CoordVector, Vec<Rational>), Error> {
    let top = positive
        .iter()
        .max_by_key(|a| a.height())
        .ok_or(Error::ZeroVector)?;
    let columns: Vec<Vec<Rational>> = simple.iter().map(|a| a.0.clone()).collect();
    let marks = solve_columns(&columns, &top.vector.0)
        .expect("a root lies in the span of the simple roots");
    debug_assert!(marks.iter().all(|m| m.is_integer() && m.is_positive()));
    Ok((top.vector.clone(), marks))
}

/// `(ρ, ρ∨)`: half-sums of positive roots and of their coroots.
pub fn weyl_vectors(
    dim: usize,
    positive: &[PositiveRoot],
) -> Result<(CoordVector, CoordVector), Error> {
    let half = rat(1, 2);
    let mut rho = CoordVector::zero(dim);
    let mut rho_check = CoordVector::zero(dim);
    for a in positive {
        rho = rho.add(&a.vector);
        rho_check = rho_check.add(&coroot(&a.vector)?);
    }
    Ok((rho.scale(&half), rho_check.scale(&half)))
}

/// Serialized form used by the `table` command.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RootTable {
    pub family: Family,
    pub rank: u32,
    pub h: u64,
    pub h_check: String,
    pub marks: Vec<String>,
    pub comarks: Vec<String>,
    pub double_comarks: Vec<String>,
    pub rho: CoordVector,
    pub rho_check: CoordVector,
    pub simple_roots: Vec<CoordVector>,
    pub positive_roots: Vec<CoordVector>,
}

impl From<&RootSystem> for RootTable {
    fn from(r: &RootSystem) -> Self {
        let strs = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect();
        RootTable {
            family: r.id.family(),
            rank: r.id.rank(),
            h: r.h,
            h_check: r.h_check.to_string(),
            marks: strs(&r.marks),
            comarks: strs(&r.comarks),
            double_comarks: strs(&r.double_comarks),
            rho: r.rho.clone(),
            rho_check: r.rho_check.clone(),
            simple_roots: r.simple_roots.clone(),
            positive_roots: r.positive_roots.iter().map(|a| a.vector.clone()).collect(),
        }
    }
}
