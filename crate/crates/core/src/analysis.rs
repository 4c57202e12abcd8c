//! Growth measurements on count tables.
//!
//! Covers the exponent sequence `log p(n) / log n`, the counting bounds
//! `sum_{n<=x} p(n) <= (M(x)+1)^{A(x)} <= sum_{n<=x^2 A(x)} p(n)`, the
//! iterated search for `p(n) > n^k`, Schur's ratio for finite part sets,
//! and the Bateman-Erdos gcd condition with a monotonicity scan.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decimal;
use crate::engine::{CountTable, Engine, EngineError};
use crate::sets::{SetDescriptor, SetError, SetKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("table covers 0..={have} but 0..={needed} is required")]
    TableTooShort { needed: usize, have: usize },
    #[error("{0} overflows the supported integer range")]
    Overflow(&'static str),
    #[error("part set {0:?} is not relatively prime")]
    NotCoprime(Vec<u64>),
    #[error("Schur's formula needs at least two parts, got {0}")]
    TooFewParts(usize),
    #[error("table was computed for parts {parts} and multiplicities {mults}, expected finite parts with unrestricted multiplicities")]
    TableMismatch { parts: String, mults: String },
}

/// Natural log of a big integer, accurate to double precision at any size.
pub fn ln_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().expect("values below 2^1000 fit in f64").ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().expect("top 64 bits fit in u64");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthPoint {
    pub n: usize,
    #[serde(with = "decimal::float")]
    pub exponent: f64,
    #[serde(with = "decimal::float")]
    pub running_sup: f64,
    #[serde(with = "decimal::float")]
    pub running_inf: f64,
}

/// `r(n) = ln p(n) / ln n` for `n >= 2` with `p(n) >= 1`, plus prefix extrema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub points: Vec<GrowthPoint>,
    /// `n >= 2` where `p(n) = 0`; these have no exponent.
    pub zero_count_indices: Vec<usize>,
}

impl GrowthReport {
    pub fn exponent(&self, n: usize) -> Option<f64> {
        self.points.binary_search_by_key(&n, |p| p.n).ok().map(|i| self.points[i].exponent)
    }

    pub fn sup(&self) -> Option<f64> {
        self.points.last().map(|p| p.running_sup)
    }

    pub fn inf(&self) -> Option<f64> {
        self.points.last().map(|p| p.running_inf)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,exponent,running_sup,running_inf\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{}\n",
                p.n,
                decimal::sig15(p.exponent),
                decimal::sig15(p.running_sup),
                decimal::sig15(p.running_inf)
            ));
        }
        out
    }
}

pub fn growth_exponents(table: &CountTable) -> GrowthReport {
    let mut points = Vec::new();
    let mut zero_count_indices = Vec::new();
    let (mut sup, mut inf) = (f64::NEG_INFINITY, f64::INFINITY);
    for (n, p) in table.values().iter().enumerate().skip(2) {
        if p.is_zero() {
            zero_count_indices.push(n);
            continue;
        }
        let exponent = ln_biguint(p) / (n as f64).ln();
        sup = sup.max(exponent);
        inf = inf.min(exponent);
        points.push(GrowthPoint { n, exponent, running_sup: sup, running_inf: inf });
    }
    GrowthReport { points, zero_count_indices }
}

/// All `n` in `2..=limit` with `p(n) > n^k`, ascending.
pub fn superpoly_witnesses(table: &CountTable, k: u32) -> Vec<usize> {
    table
        .values()
        .iter()
        .enumerate()
        .skip(2)
        .filter(|(n, p)| exceeds_power(p, *n as u64, k))
        .map(|(n, _)| n)
        .collect()
}

fn exceeds_power(p: &BigUint, n: u64, k: u32) -> bool {
    // cheap bit-length screen before the exact comparison
    let log2_n = 64 - n.leading_zeros() as u64;
    if p.bits() + 1 < (log2_n - 1) * k as u64 {
        return false;
    }
    *p > BigUint::from(n).pow(k)
}

/// The counting bounds evaluated at one `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub x: u64,
    pub a_of_x: u64,
    pub m_of_x: u64,
    /// `sum_{n <= x} p(n)`
    #[serde(with = "decimal")]
    pub upper_lhs: BigUint,
    /// `(M(x) + 1)^{A(x)}`
    #[serde(with = "decimal")]
    pub upper_rhs: BigUint,
    /// `x^2 A(x)`
    pub lower_range: u64,
    /// `sum_{n <= x^2 A(x)} p(n)`
    #[serde(with = "decimal")]
    pub lower_lhs: BigUint,
    /// Least `n <= x^2 A(x)` maximizing `p(n)`.
    pub argmax_n: u64,
    #[serde(with = "decimal")]
    pub argmax_value: BigUint,
}

impl BoundsReport {
    /// `sum_{n<=x} p(n) <= (M(x)+1)^{A(x)}`
    pub fn upper_holds(&self) -> bool {
        self.upper_lhs <= self.upper_rhs
    }

    /// `sum_{n<=x^2 A(x)} p(n) >= (M(x)+1)^{A(x)}`
    pub fn lower_holds(&self) -> bool {
        self.lower_lhs >= self.upper_rhs
    }

    /// `(x^2 A(x) + 1) p(n_x) >= sum_{n<=x^2 A(x)} p(n)`
    pub fn averaging_holds(&self) -> bool {
        &self.argmax_value * BigUint::from(self.lower_range + 1) >= self.lower_lhs
    }

    pub fn csv_header() -> &'static str {
        "x,A_of_x,M_of_x,upper_lhs,upper_rhs,lower_range,lower_lhs,argmax_n,argmax_value\n"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}\n",
            self.x,
            self.a_of_x,
            self.m_of_x,
            self.upper_lhs,
            self.upper_rhs,
            self.lower_range,
            self.lower_lhs,
            self.argmax_n,
            self.argmax_value
        )
    }
}

/// `(x^2 A(x), max(x, x^2 A(x)))`: the lower-bound range and the table
/// length a bounds report at `x` needs.
pub fn bounds_table_limit(parts: &SetDescriptor, x: u64) -> Result<(u64, usize), AnalysisError> {
    let a_of_x = parts.counting_function(x);
    let range =
        x.checked_mul(x).and_then(|v| v.checked_mul(a_of_x)).ok_or(AnalysisError::Overflow("x^2 A(x)"))?;
    let limit = usize::try_from(range.max(x)).map_err(|_| AnalysisError::Overflow("table limit"))?;
    Ok((range, limit))
}

/// Builds the table to `x^2 A(x)` and evaluates the bounds at `x`.
pub fn bounds_report(
    engine: &Engine,
    parts: &SetDescriptor,
    mults: &SetDescriptor,
    x: u64,
) -> Result<BoundsReport, AnalysisError> {
    let (_, limit) = bounds_table_limit(parts, x)?;
    let table = engine.count(parts, mults, limit)?;
    bounds_from_table(&table, x)
}

/// Evaluates the bounds at `x` on an existing table that reaches
/// `max(x, x^2 A(x))`.
pub fn bounds_from_table(table: &CountTable, x: u64) -> Result<BoundsReport, AnalysisError> {
    let (lower_range, limit) = bounds_table_limit(&table.parts, x)?;
    if limit > table.limit {
        return Err(AnalysisError::TableTooShort { needed: limit, have: table.limit });
    }
    let a_of_x = table.parts.counting_function(x);
    let m_of_x = table.mults.counting_function(x);
    let exponent = u32::try_from(a_of_x).map_err(|_| AnalysisError::Overflow("A(x)"))?;
    let (argmax_n, argmax_value) = argmax(&table.values()[..=lower_range as usize]);
    Ok(BoundsReport {
        x,
        a_of_x,
        m_of_x,
        upper_lhs: table.prefix_sum(x as usize),
        upper_rhs: BigUint::from(m_of_x + 1).pow(exponent),
        lower_range,
        lower_lhs: table.prefix_sum(lower_range as usize),
        argmax_n: argmax_n as u64,
        argmax_value: argmax_value.clone(),
    })
}

/// Least index of the maximum.
fn argmax(values: &[BigUint]) -> (usize, &BigUint) {
    let mut best = 0;
    for (n, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = n;
        }
    }
    (best, &values[best])
}

/// One round of [`iterated_witness_search`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRound {
    pub x: u64,
    pub n: u64,
    #[serde(with = "decimal")]
    pub p: BigUint,
    /// `(M(x^2 A(x)) + 1)^{A(x^2 A(x))}`, an upper bound for `p` on
    /// `[0, x^2 A(x)]`; the next round's `x^{3k}` must exceed it.
    #[serde(with = "decimal")]
    pub bound: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSearch {
    pub k: u32,
    pub rounds: Vec<WitnessRound>,
    /// The budget ran out before all requested rounds completed.
    pub truncated: bool,
    pub stop_reason: Option<String>,
}

impl WitnessSearch {
    pub fn summary(&self) -> String {
        match (&self.stop_reason, self.rounds.len()) {
            (Some(reason), 0) => format!("no witness within budget: {reason}"),
            (Some(reason), r) => format!("{r} witness(es) before the budget ran out: {reason}"),
            (None, r) => format!("{r} witness(es) found"),
        }
    }
}

/// Finite-scale version of the inductive witness construction.
///
/// Round 1 takes the least `x` (doubling, then bisection) whose argmax `n_x`
/// over `[0, x^2 A(x)]` satisfies `p(n_x) > n_x^k`. Each later round starts
/// from the least `x` with `x^{3k}` above every earlier round's bound, and
/// accepts an `x` whose argmax is a witness with `p` larger than all earlier
/// ones, doubling `x` until it does. Running out of engine budget ends the
/// search with the rounds found so far.
pub fn iterated_witness_search(
    engine: &Engine,
    parts: &SetDescriptor,
    mults: &SetDescriptor,
    k: u32,
    rounds: usize,
) -> WitnessSearch {
    let mut search = RoundSearch { engine, parts, mults, k, table: None, best_p: BigUint::zero() };
    let mut found = Vec::new();
    let mut bound_max = BigUint::zero();
    let mut stop_reason = None;

    for round in 0..rounds {
        let x_start = if round == 0 { 1 } else { least_root_above(&bound_max, 3 * k) };
        match search.run_round(x_start) {
            Ok(witness) => {
                bound_max = bound_max.max(witness.bound.clone());
                search.best_p = witness.p.clone();
                found.push(witness);
            }
            Err(reason) => {
                stop_reason = Some(reason.to_string());
                break;
            }
        }
    }
    WitnessSearch { k, truncated: found.len() < rounds, rounds: found, stop_reason }
}

struct RoundSearch<'a> {
    engine: &'a Engine,
    parts: &'a SetDescriptor,
    mults: &'a SetDescriptor,
    k: u32,
    /// Largest table built so far; smaller requests truncate it.
    table: Option<CountTable>,
    best_p: BigUint,
}

impl RoundSearch<'_> {
    fn run_round(&mut self, x_start: u64) -> Result<WitnessRound, AnalysisError> {
        let mut failed_below = x_start - 1;
        let mut x = x_start;
        let mut hit = loop {
            if let Some(hit) = self.probe(x)? {
                break hit;
            }
            failed_below = x;
            x = x.checked_mul(2).ok_or(AnalysisError::Overflow("x"))?;
        };
        // tighten to the least successful x above the last known failure
        let (mut lo, mut hi) = (failed_below, x);
        while hi - lo > 1 && lo >= x_start {
            let mid = lo + (hi - lo) / 2;
            match self.probe(mid)? {
                Some(found) => {
                    hi = mid;
                    hit = found;
                }
                None => lo = mid,
            }
        }
        Ok(hit)
    }

    /// The argmax witness at `x`, if it qualifies.
    fn probe(&mut self, x: u64) -> Result<Option<WitnessRound>, AnalysisError> {
        let (range, limit) = bounds_table_limit(self.parts, x)?;
        self.ensure_table(limit)?;
        let table = self.table.as_ref().expect("table was just built");
        let (n, p) = argmax(&table.values()[..=range as usize]);
        if n < 2 || !exceeds_power(p, n as u64, self.k) || *p <= self.best_p {
            return Ok(None);
        }
        let a_big = self.parts.counting_function(range);
        let m_big = self.mults.counting_function(range);
        let exponent = u32::try_from(a_big).map_err(|_| AnalysisError::Overflow("A(x^2 A(x))"))?;
        Ok(Some(WitnessRound { x, n: n as u64, p: p.clone(), bound: BigUint::from(m_big + 1).pow(exponent) }))
    }

    fn ensure_table(&mut self, limit: usize) -> Result<(), AnalysisError> {
        if self.table.as_ref().is_some_and(|t| t.limit >= limit) {
            return Ok(());
        }
        // drop the old table first so two large tables are never alive together
        self.table = None;
        self.table = Some(self.engine.count(self.parts, self.mults, limit)?);
        Ok(())
    }
}

/// Least `x >= 1` with `x^e > bound`.
fn least_root_above(bound: &BigUint, e: u32) -> u64 {
    let above = |x: u64| BigUint::from(x).pow(e) > *bound;
    let mut hi = 1u64;
    while !above(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    if lo == 0 {
        return hi;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `p_A(n) (k-1)! a_1...a_k / n^{k-1}` at one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurPoint {
    pub n: usize,
    pub ratio: BigRational,
}

impl SchurPoint {
    pub fn to_f64(&self) -> f64 {
        self.ratio.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal expansion truncated to `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let numer = self.ratio.numer().magnitude();
        let denom = self.ratio.denom().magnitude();
        let (whole, mut rem) = numer.div_rem(denom);
        let mut out = format!("{whole}.");
        let ten = BigUint::from(10u8);
        for _ in 0..digits {
            rem *= &ten;
            let (digit, r) = rem.div_rem(denom);
            out.push_str(&digit.to_string());
            rem = r;
        }
        out
    }
}

/// Schur's normalized ratio for every `1 <= n <= limit`.
pub fn schur_ratio(table: &CountTable, parts: &[u64]) -> Result<Vec<SchurPoint>, AnalysisError> {
    let expected_parts = SetDescriptor::finite(parts.iter().copied())?;
    if table.parts != expected_parts || table.mults.kind() != &SetKind::Naturals {
        return Err(AnalysisError::TableMismatch {
            parts: table.parts.to_string(),
            mults: table.mults.to_string(),
        });
    }
    let SetKind::Finite { elements } = expected_parts.kind() else { unreachable!() };
    let k = elements.len();
    if k < 2 {
        return Err(AnalysisError::TooFewParts(k));
    }
    if elements.iter().fold(0u64, |g, &a| g.gcd(&a)) != 1 {
        return Err(AnalysisError::NotCoprime(elements.clone()));
    }
    let mut scale: BigUint = elements.iter().map(|&a| BigUint::from(a)).product();
    for j in 1..k as u64 {
        scale *= j;
    }
    let points = (1..=table.limit)
        .map(|n| {
            let numer = BigInt::from(table.get(n) * &scale);
            let denom = BigInt::from(BigUint::from(n).pow(k as u32 - 1));
            SchurPoint { n, ratio: BigRational::new(numer, denom) }
        })
        .collect();
    Ok(points)
}

/// Result of the truncated Bateman-Erdos check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeVerdict {
    pub holds: bool,
    /// `true` verdicts are final; `false` may flip at a larger bound since
    /// truncation can only make gcds larger.
    pub definitive: bool,
    pub bound: u64,
    /// `(a, gcd(A \ {a}))` for each `a <= bound`.
    pub certificate: Vec<(u64, u64)>,
}

/// Whether `gcd(A \ {a}) = 1` for every `a in A` with `a <= bound`.
pub fn be_condition(parts: &SetDescriptor, bound: u64) -> Result<BeVerdict, AnalysisError> {
    let elements = parts.enumerate_up_to(bound);
    if elements.len() < 2 {
        return Err(SetError::TooFewElements { needed: 2, bound, found: elements.len() }.into());
    }
    let certificate = elements
        .iter()
        .map(|&a| parts.gcd_without(a, bound).map(|g| (a, g)))
        .collect::<Result<Vec<_>, _>>()?;
    let holds = certificate.iter().all(|&(_, g)| g == 1);
    Ok(BeVerdict { holds, definitive: holds, bound, certificate })
}

/// Least `n` in `[from, limit - 1]` where the sequence fails to increase:
/// `p(n+1) <= p(n)` when `strict`, `p(n+1) < p(n)` otherwise.
pub fn monotonicity_scan(table: &CountTable, from: usize, strict: bool) -> Option<usize> {
    let values = table.values();
    (from..table.limit).find(|&n| if strict { values[n + 1] <= values[n] } else { values[n + 1] < values[n] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(text: &str) -> SetDescriptor {
        SetDescriptor::parse(text).unwrap()
    }

    fn table(a: &str, m: &str, n: usize) -> CountTable {
        Engine::new().count(&set(a), &set(m), n).unwrap()
    }

    #[test]
    fn ln_matches_float_for_small_and_shifted_values() {
        let v = BigUint::from(83834u32);
        assert!((ln_biguint(&v) - 83834f64.ln()).abs() < 1e-14);
        let big = BigUint::from(3u8).pow(2000);
        let expected = 2000.0 * 3f64.ln();
        assert!(((ln_biguint(&big) - expected) / expected).abs() < 1e-15);
    }

    #[test]
    fn growth_exponents_examples() {
        let report = growth_exponents(&table("pow2", "odds", 1024));
        for r in 1..=10 {
            assert_eq!(report.exponent(1 << r), Some(0.0));
        }
        let ones = growth_exponents(&table("1", "naturals", 50));
        assert!(ones.points.iter().all(|p| p.exponent == 0.0));
        let schur3 = growth_exponents(&table("1,2,3", "naturals", 1000));
        let expected = 83834f64.ln() / 1000f64.ln();
        assert!((schur3.exponent(1000).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 1.64).abs() < 0.005);
    }

    #[test]
    fn growth_records_zero_counts_and_extrema() {
        let report = growth_exponents(&table("2,3", "naturals", 40));
        assert!(report.zero_count_indices.is_empty());
        let report = growth_exponents(&table("2", "naturals", 20));
        assert_eq!(report.zero_count_indices, vec![3, 5, 7, 9, 11, 13, 15, 17, 19]);
        assert!(report.points.windows(2).all(|w| w[0].running_sup <= w[1].running_sup));
        assert!(report.points.windows(2).all(|w| w[0].running_inf >= w[1].running_inf));
        assert!(report.points.iter().all(|p| p.exponent >= 0.0));
    }

    #[test]
    fn superpoly_witness_examples() {
        assert!(superpoly_witnesses(&table("1", "naturals", 100), 1).is_empty());
        let classic = table("naturals", "naturals", 100);
        assert_eq!(classic.get(13), &BigUint::from(101u32));
        let w1 = superpoly_witnesses(&classic, 1);
        assert!(w1.contains(&13));
        let w2 = superpoly_witnesses(&classic, 2);
        assert!(w2.iter().all(|n| w1.contains(n)));
    }

    #[test]
    fn bounds_examples() {
        let e = Engine::new();
        let r = bounds_report(&e, &set("1"), &set("naturals"), 5).unwrap();
        assert_eq!((r.a_of_x, r.m_of_x), (1, 5));
        assert_eq!(r.upper_lhs, BigUint::from(6u8));
        assert_eq!(r.upper_rhs, BigUint::from(6u8));

        let r = bounds_report(&e, &set("pow2"), &set("odds"), 4).unwrap();
        assert_eq!((r.a_of_x, r.m_of_x), (3, 2));
        assert_eq!(r.upper_rhs, BigUint::from(27u8));
        assert_eq!(r.upper_lhs, BigUint::from(6u8));
        assert_eq!(r.lower_range, 48);
        assert!(r.upper_holds() && r.lower_holds() && r.averaging_holds());

        let r = bounds_report(&e, &set("pow2"), &set("odds"), 1).unwrap();
        assert_eq!(r.upper_lhs, BigUint::from(2u8));
        assert_eq!(r.upper_rhs, BigUint::from(2u8));
        let r = bounds_report(&e, &set("2,3"), &set("odds"), 1).unwrap();
        assert_eq!(r.upper_lhs, BigUint::from(1u8));
        assert_eq!(r.upper_rhs, BigUint::from(1u8));
        assert_eq!(r.lower_range, 0);
    }

    #[test]
    fn bounds_reject_short_tables() {
        let t = table("naturals", "naturals", 10);
        let err = bounds_from_table(&t, 3).unwrap_err();
        assert_eq!(err, AnalysisError::TableTooShort { needed: 27, have: 10 });
    }

    #[test]
    fn argmax_prefers_least_index() {
        let values: Vec<BigUint> = [1u8, 3, 2, 3].iter().map(|&v| BigUint::from(v)).collect();
        assert_eq!(argmax(&values).0, 1);
    }

    #[test]
    fn least_root_above_is_minimal() {
        assert_eq!(least_root_above(&BigUint::from(244_140_625u64), 3), 626);
        assert_eq!(least_root_above(&BigUint::zero(), 3), 1);
        assert_eq!(least_root_above(&BigUint::from(8u8), 3), 3);
        assert_eq!(least_root_above(&BigUint::from(7u8), 3), 2);
    }

    #[test]
    fn iterated_search_reports_failure_within_budget() {
        let engine = Engine::new().with_max_limit(200_000);
        let result = iterated_witness_search(&engine, &set("1,2,3"), &set("naturals"), 3, 1);
        assert!(result.rounds.is_empty());
        assert!(result.truncated);
        assert!(result.summary().starts_with("no witness within budget"));
    }

    #[test]
    fn iterated_search_stops_when_budget_runs_out() {
        let result = iterated_witness_search(&Engine::new(), &set("naturals"), &set("naturals"), 1, 3);
        assert_eq!(result.rounds.len(), 1);
        assert_eq!(result.rounds[0].x, 2);
        assert_eq!(result.rounds[0].bound, BigUint::from(9u8).pow(8));
        assert!(result.truncated);
    }

    #[test]
    fn schur_examples() {
        let t = table("1,2", "naturals", 1000);
        let ratios = schur_ratio(&t, &[1, 2]).unwrap();
        let at = &ratios[999];
        assert_eq!(at.n, 1000);
        assert_eq!(at.ratio, BigRational::new(1002.into(), 1000.into()));
        assert_eq!(at.to_decimal(4), "1.0020");

        let t = table("1,2,3", "naturals", 6);
        let r6 = &schur_ratio(&t, &[1, 2, 3]).unwrap()[5];
        assert_eq!(r6.ratio, BigRational::new(84.into(), 36.into()));
        assert!((r6.to_f64() - 2.3333).abs() < 1e-3);

        let t = table("2,4", "naturals", 10);
        assert!(matches!(schur_ratio(&t, &[2, 4]), Err(AnalysisError::NotCoprime(_))));
        let t = table("1", "naturals", 10);
        assert!(matches!(schur_ratio(&t, &[1]), Err(AnalysisError::TooFewParts(1))));
        let t = table("1,2", "odds", 10);
        assert!(matches!(schur_ratio(&t, &[1, 2]), Err(AnalysisError::TableMismatch { .. })));
    }

    #[test]
    fn be_condition_examples() {
        let v = be_condition(&set("2,3"), 10).unwrap();
        assert!(!v.holds);
        assert_eq!(v.certificate, vec![(2, 3), (3, 2)]);
        assert!(be_condition(&set("1,2,3"), 10).unwrap().holds);
        let v = be_condition(&set("pow2"), 100).unwrap();
        assert!(!v.holds && !v.definitive);
        assert_eq!(v.certificate[0], (1, 2));
        assert!(be_condition(&set("5"), 10).is_err());
    }

    #[test]
    fn monotonicity_examples() {
        let ones = table("1", "naturals", 30);
        assert_eq!(monotonicity_scan(&ones, 4, true), Some(4));
        assert_eq!(monotonicity_scan(&ones, 0, false), None);
        let classic = table("naturals", "naturals", 200);
        assert_eq!(monotonicity_scan(&classic, 1, true), None);
        assert_eq!(monotonicity_scan(&classic, 0, true), Some(0));
        let twos = table("2,3", "naturals", 10);
        assert_eq!(monotonicity_scan(&twos, 0, false), Some(0));
    }
}
