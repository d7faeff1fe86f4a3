//! The Gamma-product identities `(F)`, `(F')`, `(F'')` and their verification.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{FactoredConstant, Rational};
use crate::gammaword::{word_from_terms, GammaWord};
use crate::numeric::{eval_word_ln, PrecisionContext};
use crate::prover::{Certificate, LatticeCache, ProofOutcome};
use crate::rootsys::{build, coroot, Family, RootSystem, RootSystemId};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// `γ(R, α_i)`, simply-laced systems only.
    F,
    /// `γ'(R, α_i)`.
    Fprime,
    /// `γ''(R, α_i)`.
    Fsecond,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::F, Variant::Fprime, Variant::Fsecond];

    pub fn admissible_for(self, r: &RootSystem) -> bool {
        self != Variant::F || r.simply_laced
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "F" | "f" => Ok(Variant::F),
            "Fprime" | "fprime" | "F'" => Ok(Variant::Fprime),
            "Fsecond" | "fsecond" | "F''" => Ok(Variant::Fsecond),
            _ => Err(Error::Parse(format!("unknown variant `{s}` (F, Fprime, Fsecond)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Numeric,
    Both,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "numeric" => Ok(Mode::Numeric),
            "both" => Ok(Mode::Both),
            _ => Err(Error::Parse(format!("unknown mode `{s}` (exact, numeric, both)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
            Mode::Both => "both",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    ProvedExact,
    NumericOnly,
    Mismatch,
    NotInLattice,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::ProvedExact => "proved_exact",
            Status::NumericOnly => "numeric_only",
            Status::Mismatch => "mismatch",
            Status::NotInLattice => "not_in_lattice",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: Family,
    pub rank: u32,
    pub index: usize,
    pub variant: Variant,
    pub mode: Mode,
    pub status: Status,
    pub lhs_word: GammaWord,
    pub rhs_constant: FactoredConstant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric_residual: Option<String>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    /// Whether this report counts as a pass under its mode.
    pub fn passed(&self) -> bool {
        match self.mode {
            Mode::Exact | Mode::Both => self.status == Status::ProvedExact,
            Mode::Numeric => self.status == Status::NumericOnly,
        }
    }
}

fn check_index(r: &RootSystem, i: usize) -> Result<(), Error> {
    if i == 0 || i > r.rank() {
        return Err(Error::IndexOutOfRange { index: i, rank: r.rank() });
    }
    Ok(())
}

fn check_variant(r: &RootSystem, v: Variant) -> Result<(), Error> {
    if !v.admissible_for(r) {
        return Err(Error::NotSimplyLaced(r.id));
    }
    Ok(())
}

/// The product over positive roots for `(R, α_i, variant)` as a γ-word. The
/// grid is the lcm of all argument denominators; indices are merged but not
/// folded by reflection.
pub fn lhs_word(r: &RootSystem, i: usize, v: Variant) -> Result<GammaWord, Error> {
    check_index(r, i)?;
    check_variant(r, v)?;
    let alpha_i = r.alpha(i);
    let h = Rational::from_integer(r.h.into());
    let mut terms = Vec::with_capacity(r.positive_roots.len());
    for root in &r.positive_roots {
        let a = &root.vector;
        let (arg, pairing) = match v {
            Variant::F => (r.inner(a, &r.rho) / &h, r.inner(alpha_i, a)),
            Variant::Fprime => (r.inner(a, &r.rho_check) / &h, r.inner(alpha_i, &coroot(a)?)),
            Variant::Fsecond => (r.inner(a, &r.rho) / &r.h_check, r.inner(&coroot(alpha_i)?, a)),
        };
        if !pairing.is_integer() {
            return Err(Error::InvalidSimpleRoots(format!("non-integral pairing {pairing}")));
        }
        let e = (-pairing).to_integer().to_i64().expect("pairings are small");
        terms.push((arg, e));
    }
    word_from_terms(&terms)
}

/// `k = ∏ n_i^{n_i}`, `k' = ∏ (n_i∨)^{n_i}`, `k'' = ∏ (n_i∨∨)^{n_i∨}`, over
/// `i = 0..r`.
pub fn k_constant(r: &RootSystem, v: Variant) -> FactoredConstant {
    let (bases, exps) = match v {
        Variant::F => (&r.marks, &r.marks),
        Variant::Fprime => (&r.comarks, &r.marks),
        Variant::Fsecond => (&r.double_comarks, &r.comarks),
    };
    bases
        .iter()
        .zip(exps)
        .fold(FactoredConstant::one(), |acc, (b, e)| {
            acc.mul(&FactoredConstant::factor_power(b, e).expect("marks are positive"))
        })
}

/// `n_i k^{-1/h}`, `n_i∨ k'^{-1/h}` or `n_i∨∨ k''^{-1/h∨}`.
pub fn rhs_constant(r: &RootSystem, i: usize, v: Variant) -> Result<FactoredConstant, Error> {
    check_index(r, i)?;
    check_variant(r, v)?;
    let h = Rational::from_integer(r.h.into());
    let (mark, denom) = match v {
        Variant::F => (&r.marks[i], h),
        Variant::Fprime => (&r.comarks[i], h),
        Variant::Fsecond => (&r.double_comarks[i], r.h_check.clone()),
    };
    let k = k_constant(r, v).pow(&(-denom.recip()));
    let mark = FactoredConstant::factor_power(mark, &Rational::one())?;
    Ok(mark.mul(&k))
}

/// Verification driver: a precision context for the numeric side and a
/// shared cache of relation lattices for the exact side.
#[derive(Debug)]
pub struct Verifier {
    ctx: PrecisionContext,
    lattices: LatticeCache,
    fallback: bool,
}

impl Verifier {
    pub fn new(digits: u32) -> Result<Self, Error> {
        Ok(Verifier {
            ctx: PrecisionContext::new(digits)?,
            lattices: LatticeCache::new(),
            fallback: true,
        })
    }

    /// Whether an exact run falls back to the numeric check when the word is
    /// outside the lattice (default on). With it off, such cases report
    /// `not_in_lattice`.
    pub fn with_fallback(mut self, fallback: bool) -> Self {
        self.fallback = fallback;
        self
    }

    pub fn context(&self) -> &PrecisionContext {
        &self.ctx
    }

    /// Numeric acceptance threshold exponent: residuals must be at most
    /// `10^{-(digits-10)}`.
    pub fn tolerance_exponent(&self) -> i32 {
        -(self.ctx.decimal_digits() as i32 - 10)
    }

    fn residual(&self, lhs: &GammaWord, rhs: &FactoredConstant) -> (bool, String) {
        let diff = eval_word_ln(lhs, &self.ctx).sub(&rhs.ln(&self.ctx)).abs();
        (diff.le_pow10(self.tolerance_exponent()), diff.to_sci_string())
    }

    pub fn verify(
        &self,
        r: &RootSystem,
        i: usize,
        v: Variant,
        mode: Mode,
    ) -> Result<VerificationReport, Error> {
        let start = Instant::now();
        let lhs = lhs_word(r, i, v)?;
        let rhs = rhs_constant(r, i, v)?;

        let mut certificate = None;
        let mut exact_status = None;
        if mode != Mode::Numeric {
            let outcome = if lhs.denominator() < 2 {
                crate::prover::prove_constant(&lhs)
            } else {
                self.lattices.get(lhs.denominator()).prove(&lhs)
            };
            exact_status = Some(match outcome {
                ProofOutcome::Proved(cert) => {
                    let value = lhs.coeff().mul(&cert.derived_constant);
                    certificate = Some(cert);
                    if value == rhs {
                        Status::ProvedExact
                    } else {
                        Status::Mismatch
                    }
                }
                ProofOutcome::NotInLattice => Status::NotInLattice,
            });
        }

        let run_numeric = match (mode, exact_status) {
            (Mode::Numeric, _) | (Mode::Both, _) => true,
            (Mode::Exact, Some(Status::NotInLattice)) => self.fallback,
            _ => false,
        };
        let numeric = run_numeric.then(|| self.residual(&lhs, &rhs));

        let status = match (exact_status, &numeric) {
            (Some(Status::ProvedExact), _) => Status::ProvedExact,
            (Some(Status::Mismatch), _) => Status::Mismatch,
            (Some(Status::NotInLattice), Some(_)) if !self.fallback => Status::NotInLattice,
            (_, Some((true, _))) => Status::NumericOnly,
            (_, Some((false, _))) => Status::Mismatch,
            (Some(s), None) => s,
            (None, None) => unreachable!("numeric mode always evaluates"),
        };

        Ok(VerificationReport {
            family: r.id.family(),
            rank: r.id.rank(),
            index: i,
            variant: v,
            mode,
            status,
            lhs_word: lhs,
            rhs_constant: rhs,
            certificate,
            numeric_residual: numeric.map(|(_, s)| s),
            wall_time_ms: start.elapsed().as_millis() as u64,
        })
    }

    /// One report per `(system, i, admissible variant)`, sorted by family,
    /// rank, index and variant.
    pub fn verify_all(&self, config: &VerifyConfig) -> Result<Summary, Error> {
        let mut systems = Vec::new();
        for sel in &config.systems {
            for rank in sel.rank_min..=sel.rank_max {
                systems.push(build(RootSystemId::new(sel.family, rank)?)?);
            }
        }
        let tasks: Vec<(&RootSystem, usize, Variant)> = systems
            .iter()
            .flat_map(|r| {
                config
                    .variants
                    .iter()
                    .filter(|v| v.admissible_for(r))
                    .flat_map(move |&v| (1..=r.rank()).map(move |i| (r, i, v)))
            })
            .collect();
        let mut reports = tasks
            .par_iter()
            .map(|&(r, i, v)| self.verify(r, i, v, config.mode))
            .collect::<Result<Vec<_>, _>>()?;
        reports.sort_by_key(|rep| (rep.family, rep.rank, rep.index, rep.variant));
        Ok(Summary::from_reports(reports))
    }
}

/// Verifies one identity with a throwaway lattice cache.
pub fn verify(
    r: &RootSystem,
    i: usize,
    v: Variant,
    mode: Mode,
    digits: u32,
) -> Result<VerificationReport, Error> {
    Verifier::new(digits)?.verify(r, i, v, mode)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SystemRange {
    pub family: Family,
    pub rank_min: u32,
    pub rank_max: u32,
}

impl SystemRange {
    /// Clamps `[lo, hi]` to the family's admissible ranks; `None` when empty.
    pub fn clamped(family: Family, lo: Option<u32>, hi: Option<u32>) -> Option<Self> {
        let (fmin, fmax) = family.rank_bounds();
        let rank_min = lo.unwrap_or(fmin).max(fmin);
        let rank_max = hi
            .unwrap_or(fmax.unwrap_or(DEFAULT_RANK_CEILING))
            .min(fmax.unwrap_or(u32::MAX));
        (rank_min <= rank_max).then_some(SystemRange { family, rank_min, rank_max })
    }
}

/// Highest rank swept for the infinite families unless asked otherwise.
pub const DEFAULT_RANK_CEILING: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub systems: Vec<SystemRange>,
    pub variants: Vec<Variant>,
    pub mode: Mode,
}

impl VerifyConfig {
    /// Every family up to the default ceiling, all variants.
    pub fn all(mode: Mode) -> Self {
        VerifyConfig {
            systems: Family::ALL
                .iter()
                .filter_map(|&f| SystemRange::clamped(f, None, None))
                .collect(),
            variants: Variant::ALL.to_vec(),
            mode,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub failures: usize,
    pub counts: BTreeMap<Status, usize>,
    pub reports: Vec<VerificationReport>,
}

impl Summary {
    pub fn from_reports(reports: Vec<VerificationReport>) -> Self {
        let mut counts = BTreeMap::new();
        for r in &reports {
            *counts.entry(r.status).or_insert(0) += 1;
        }
        Summary {
            total: reports.len(),
            failures: reports.iter().filter(|r| !r.passed()).count(),
            counts,
            reports,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }
}
