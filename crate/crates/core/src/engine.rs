//! Exact computation of `p_{A,M}(0..=N)`.
//!
//! The generating function is `prod_{a in A} (1 + sum_{m in M} q^{m a})`,
//! truncated at degree `N`. Parts `a > N` and terms with `m a > N` cannot
//! contribute to any coefficient of degree `<= N`, so the truncation is exact.
//!
//! Three routes compute the same numbers:
//!
//! - [`Engine::count_generic`] multiplies in every term `q^{m a}` explicitly.
//! - [`Engine::count_ap_optimized`] writes `M` as a disjoint union of
//!   progressions `{c + j D}` over one common step `D`, so each part's factor
//!   is a sparse numerator over `1 - q^{D a}`: one linear division recurrence
//!   and one sparse multiplication per part.
//! - [`enumerate_partitions`] lists every partition and is the test oracle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decimal;
use crate::limbs::LimbSeries;
use crate::sets::{Decomposition, SetDescriptor};

/// Default ceiling on elementary big-integer additions per table.
pub const DEFAULT_WORK_CEILING: u64 = 1_000_000_000;
/// Default ceiling on table length, which bounds memory.
pub const DEFAULT_MAX_LIMIT: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("projected work {projected} additions exceeds the ceiling of {ceiling}; use the progression path or lower N")]
    BudgetExceeded { projected: u64, ceiling: u64 },
    #[error("table limit {limit} exceeds the maximum table length {max}")]
    LimitTooLarge { limit: usize, max: usize },
    #[error("multiplicity set {0} has no progression decomposition")]
    UnsupportedDecomposition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnginePath {
    Generic,
    ApOptimized,
    Oracle,
}

impl fmt::Display for EnginePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnginePath::Generic => "generic",
            EnginePath::ApOptimized => "ap_optimized",
            EnginePath::Oracle => "oracle",
        })
    }
}

/// Exact values `p_{A,M}(0..=limit)` together with how they were produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub parts: SetDescriptor,
    pub mults: SetDescriptor,
    pub limit: usize,
    pub engine_path: EnginePath,
    #[serde(with = "decimal::vec")]
    values: Vec<BigUint>,
}

impl CountTable {
    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// `p(n)`; panics if `n > limit`.
    pub fn get(&self, n: usize) -> &BigUint {
        &self.values[n]
    }

    /// The same table cut down to `0..=limit`.
    pub fn truncated(&self, limit: usize) -> CountTable {
        assert!(limit <= self.limit, "cannot extend a table by truncation");
        CountTable {
            parts: self.parts.clone(),
            mults: self.mults.clone(),
            limit,
            engine_path: self.engine_path,
            values: self.values[..=limit].to_vec(),
        }
    }

    /// `sum_{n <= upto} p(n)`.
    pub fn prefix_sum(&self, upto: usize) -> BigUint {
        self.values[..=upto].iter().sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,p\n");
        for (n, p) in self.values.iter().enumerate() {
            out.push_str(&format!("{n},{p}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("count tables always serialize")
    }
}

/// One partition: a finite map from part to its (nonzero) multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct PartitionWitness {
    pub terms: BTreeMap<u64, u64>,
}

impl PartitionWitness {
    pub fn new<I: IntoIterator<Item = (u64, u64)>>(terms: I) -> Self {
        PartitionWitness { terms: terms.into_iter().collect() }
    }

    /// `sum m_a * a`.
    pub fn total(&self) -> u128 {
        self.terms.iter().map(|(&a, &m)| a as u128 * m as u128).sum()
    }

    /// True iff all parts lie in `parts`, all multiplicities in `mults`, and
    /// the weighted sum is `n`.
    pub fn verify(&self, parts: &SetDescriptor, mults: &SetDescriptor, n: u64) -> bool {
        self.terms.iter().all(|(&a, &m)| parts.contains(a) && mults.contains(m)) && self.total() == n as u128
    }
}

impl fmt::Display for PartitionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(|(a, m)| format!("{a}:{m}")).collect();
        write!(f, "{{{}}}", terms.join(","))
    }
}

/// Output of [`enumerate_partitions`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub witnesses: Vec<PartitionWitness>,
    /// Set when `cap` was reached before the search finished.
    pub truncated: bool,
}

/// Lists every partition of `n` with parts in `parts` and multiplicities in
/// `mults`, at most `cap` of them.
///
/// Parts are visited largest first; at each part the "unused" branch comes
/// first, then multiplicities in increasing order.
pub fn enumerate_partitions(parts: &SetDescriptor, mults: &SetDescriptor, n: u64, cap: usize) -> Enumeration {
    struct Search<'a> {
        parts: Vec<u64>,
        mults: &'a SetDescriptor,
        cap: usize,
        current: Vec<(u64, u64)>,
        out: Vec<PartitionWitness>,
        truncated: bool,
    }

    impl Search<'_> {
        fn descend(&mut self, idx: usize, remaining: u64) {
            if self.truncated {
                return;
            }
            if remaining == 0 {
                if self.out.len() == self.cap {
                    self.truncated = true;
                } else {
                    self.out.push(PartitionWitness::new(self.current.iter().copied()));
                }
                return;
            }
            let Some(&part) = self.parts.get(idx) else { return };
            self.descend(idx + 1, remaining);
            for m in self.mults.enumerate_up_to(remaining / part) {
                self.current.push((part, m));
                self.descend(idx + 1, remaining - m * part);
                self.current.pop();
            }
        }
    }

    let mut parts_desc = if n == 0 { Vec::new() } else { parts.enumerate_up_to(n) };
    parts_desc.reverse();
    let mut search =
        Search { parts: parts_desc, mults, cap, current: Vec::new(), out: Vec::new(), truncated: false };
    search.descend(0, n);
    Enumeration { witnesses: search.out, truncated: search.truncated }
}

/// Count-table builder with resource ceilings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Engine {
    work_ceiling: u64,
    max_limit: usize,
}

impl Default for Engine {
    fn default() -> Self {
        Engine { work_ceiling: DEFAULT_WORK_CEILING, max_limit: DEFAULT_MAX_LIMIT }
    }
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_work_ceiling(mut self, ceiling: u64) -> Self {
        self.work_ceiling = ceiling;
        self
    }

    pub fn with_max_limit(mut self, max_limit: usize) -> Self {
        self.max_limit = max_limit;
        self
    }

    pub fn work_ceiling(&self) -> u64 {
        self.work_ceiling
    }

    /// Progression path when `mults` decomposes, generic path otherwise.
    pub fn count(
        &self,
        parts: &SetDescriptor,
        mults: &SetDescriptor,
        limit: usize,
    ) -> Result<CountTable, EngineError> {
        match self.count_ap_optimized(parts, mults, limit) {
            Err(EngineError::UnsupportedDecomposition(_)) => self.count_generic(parts, mults, limit),
            other => other,
        }
    }

    /// Work the table for `(parts, mults, limit)` would take, on the path
    /// [`Engine::count`] would choose.
    pub fn projected_work(&self, parts: &SetDescriptor, mults: &SetDescriptor, limit: usize) -> u64 {
        let part_list = parts.enumerate_up_to(limit as u64);
        match mults.decompose() {
            Some(d) => ap_work(&part_list, &RationalFactor::from_decomposition(&d), limit),
            None => generic_work(&part_list, mults, limit),
        }
    }

    pub fn count_generic(
        &self,
        parts: &SetDescriptor,
        mults: &SetDescriptor,
        limit: usize,
    ) -> Result<CountTable, EngineError> {
        self.check_limit(limit)?;
        let part_list = parts.enumerate_up_to(limit as u64);
        self.check_work(generic_work(&part_list, mults, limit))?;

        let mut values = LimbSeries::one(limit + 1);
        for &a in &part_list {
            let a = a as usize;
            let steps: Vec<usize> =
                mults.enumerate_up_to((limit / a) as u64).into_iter().map(|m| m as usize * a).collect();
            apply_sparse(&mut values, &steps);
        }
        Ok(self.table(parts, mults, limit, EnginePath::Generic, values.into_biguints()))
    }

    pub fn count_ap_optimized(
        &self,
        parts: &SetDescriptor,
        mults: &SetDescriptor,
        limit: usize,
    ) -> Result<CountTable, EngineError> {
        let decomposition =
            mults.decompose().ok_or_else(|| EngineError::UnsupportedDecomposition(mults.to_string()))?;
        self.check_limit(limit)?;
        let factor = RationalFactor::from_decomposition(&decomposition);
        let part_list = parts.enumerate_up_to(limit as u64);
        self.check_work(ap_work(&part_list, &factor, limit))?;

        let mut values = LimbSeries::one(limit + 1);
        for &a in &part_list {
            factor.apply(&mut values, a as usize);
        }
        Ok(self.table(parts, mults, limit, EnginePath::ApOptimized, values.into_biguints()))
    }

    /// Builds a table by listing partitions one by one. Only usable for
    /// small `limit`.
    pub fn count_oracle(&self, parts: &SetDescriptor, mults: &SetDescriptor, limit: usize) -> CountTable {
        let values = (0..=limit as u64)
            .map(|n| BigUint::from(enumerate_partitions(parts, mults, n, usize::MAX).witnesses.len()))
            .collect();
        self.table(parts, mults, limit, EnginePath::Oracle, values)
    }

    fn table(
        &self,
        parts: &SetDescriptor,
        mults: &SetDescriptor,
        limit: usize,
        engine_path: EnginePath,
        values: Vec<BigUint>,
    ) -> CountTable {
        CountTable { parts: parts.clone(), mults: mults.clone(), limit, engine_path, values }
    }

    fn check_limit(&self, limit: usize) -> Result<(), EngineError> {
        if limit > self.max_limit {
            return Err(EngineError::LimitTooLarge { limit, max: self.max_limit });
        }
        Ok(())
    }

    fn check_work(&self, projected: u64) -> Result<(), EngineError> {
        if projected > self.work_ceiling {
            return Err(EngineError::BudgetExceeded { projected, ceiling: self.work_ceiling });
        }
        Ok(())
    }
}

/// Additions one pass of shift `shift` performs on a table of `limit + 1`
/// coefficients.
fn span(limit: usize, shift: usize) -> u64 {
    (limit + 1).saturating_sub(shift) as u64
}

fn generic_work(parts: &[u64], mults: &SetDescriptor, limit: usize) -> u64 {
    let mut total = 0u64;
    for &a in parts {
        for m in mults.enumerate_up_to(limit as u64 / a) {
            total = total.saturating_add(span(limit, (m * a) as usize));
        }
    }
    total
}

fn ap_work(parts: &[u64], factor: &RationalFactor, limit: usize) -> u64 {
    let mut total = 0u64;
    for &a in parts {
        let a = a as usize;
        if let Some(d) = factor.denominator_step {
            total = total.saturating_add(span(limit, d as usize * a));
        }
        for &(t, c) in &factor.numerator {
            total = total.saturating_add(c.unsigned_abs().saturating_mul(span(limit, t as usize * a)));
        }
    }
    total
}

/// In place: `values <- values * (1 + sum_s q^s)` for ascending shifts `steps`.
fn apply_sparse(values: &mut LimbSeries, steps: &[usize]) {
    let Some(&min_step) = steps.first() else { return };
    for n in (min_step..values.len()).rev() {
        for &s in steps {
            if s > n {
                break;
            }
            values.add_row(n, n - s);
        }
    }
}

/// `1 + sum_{m in M} u^m` written as `P(u) / (1 - u^D)` with a sparse
/// integer polynomial `P`, or as `P(u)` alone when `M` is finite.
#[derive(Debug, Clone, PartialEq, Eq)]
struct RationalFactor {
    denominator_step: Option<u64>,
    /// `(exponent, coefficient)` for the nonconstant terms of `P`, ascending;
    /// the constant term is always 1.
    numerator: Vec<(u64, i64)>,
}

impl RationalFactor {
    /// With every progression rewritten over the common step `D`,
    /// `1 + sum_s u^s + sum_i u^{c_i}/(1 - u^D)
    ///   = ((1 - u^D)(1 + sum_s u^s) + sum_i u^{c_i}) / (1 - u^D)`.
    fn from_decomposition(d: &Decomposition) -> Self {
        let mut terms: BTreeMap<u64, i64> = BTreeMap::new();
        for &s in &d.singles {
            *terms.entry(s).or_default() += 1;
        }
        if d.progressions.is_empty() {
            return RationalFactor { denominator_step: None, numerator: terms.into_iter().collect() };
        }
        let step = d.progressions.iter().fold(1u64, |l, p| num_integer::lcm(l, p.step));
        *terms.entry(step).or_default() -= 1;
        for &s in &d.singles {
            *terms.entry(s + step).or_default() -= 1;
        }
        for p in &d.progressions {
            for j in 0..step / p.step {
                *terms.entry(p.first + j * p.step).or_default() += 1;
            }
        }
        let numerator = terms.into_iter().filter(|&(_, c)| c != 0).collect();
        RationalFactor { denominator_step: Some(step), numerator }
    }

    /// `values <- values * factor(q^a)`.
    fn apply(&self, values: &mut LimbSeries, a: usize) {
        let limit = values.len() - 1;
        if let Some(d) = self.denominator_step {
            let stride = d as usize * a;
            for n in stride..=limit {
                values.add_row(n, n - stride);
            }
        }
        // shifts repeated by coefficient magnitude, split by sign
        let mut adds = Vec::new();
        let mut subs = Vec::new();
        for &(t, c) in &self.numerator {
            let shift = t as usize * a;
            if shift > limit {
                break;
            }
            let target = if c > 0 { &mut adds } else { &mut subs };
            target.extend(std::iter::repeat_n(shift, c.unsigned_abs() as usize));
        }
        let Some(min_shift) = adds.first().copied().into_iter().chain(subs.first().copied()).min() else {
            return;
        };
        // descending, so lower coefficients still hold the quotient;
        // additions first keeps every intermediate nonnegative
        for n in (min_shift..=limit).rev() {
            for &shift in adds.iter().take_while(|&&s| s <= n) {
                values.add_row(n, n - shift);
            }
            for &shift in subs.iter().take_while(|&&s| s <= n) {
                values.sub_row(n, n - shift);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn set(text: &str) -> SetDescriptor {
        SetDescriptor::parse(text).unwrap()
    }

    fn vals(t: &CountTable) -> Vec<u64> {
        t.values().iter().map(|v| u64::try_from(v).unwrap()).collect()
    }

    #[test]
    fn generic_examples() {
        let e = Engine::new();
        let t = e.count_generic(&set("1"), &set("naturals"), 5).unwrap();
        assert_eq!(vals(&t), vec![1; 6]);
        let t = e.count_generic(&set("pow2"), &set("odds"), 4).unwrap();
        assert_eq!(vals(&t)[4], 1);
        assert_eq!(vals(&t)[3], 2);
        let t = e.count_generic(&set("1,2,3"), &set("naturals"), 6).unwrap();
        assert_eq!(vals(&t)[6], 7);
    }

    #[test]
    fn ap_examples() {
        let e = Engine::new();
        let t = e.count_ap_optimized(&set("pow2"), &set("odds"), 4).unwrap();
        assert_eq!(vals(&t)[4], 1);
        let t = e.count_ap_optimized(&set("1,2"), &set("naturals"), 6).unwrap();
        assert_eq!(vals(&t)[6], 4);
        let t = e.count_ap_optimized(&set("2"), &set("ap:1:2"), 6).unwrap();
        assert_eq!(vals(&t)[6], 1);
    }

    #[test]
    fn ap_rejects_undecomposable_mults() {
        let err = Engine::new().count_ap_optimized(&set("naturals"), &set("factorials"), 10);
        assert!(matches!(err, Err(EngineError::UnsupportedDecomposition(_))));
        let t = Engine::new().count(&set("naturals"), &set("factorials"), 10).unwrap();
        assert_eq!(t.engine_path, EnginePath::Generic);
    }

    #[test]
    fn budget_is_enforced() {
        let e = Engine::new().with_work_ceiling(1000);
        let err = e.count_generic(&set("naturals"), &set("naturals"), 500).unwrap_err();
        assert!(matches!(err, EngineError::BudgetExceeded { ceiling: 1000, .. }));
        let err = Engine::new().with_max_limit(10).count(&set("1"), &set("naturals"), 11);
        assert_eq!(err, Err(EngineError::LimitTooLarge { limit: 11, max: 10 }));
    }

    #[test]
    fn enumeration_examples() {
        let any = enumerate_partitions(&set("pow2"), &set("odds"), 0, 10);
        assert_eq!(any.witnesses, vec![PartitionWitness::default()]);
        let e = enumerate_partitions(&set("pow2"), &set("odds"), 8, 10);
        assert_eq!(e.witnesses, vec![PartitionWitness::new([(8, 1)])]);
        assert!(!e.truncated);

        let e = enumerate_partitions(&set("1,2,3"), &set("naturals"), 4, 100);
        let expected = vec![
            PartitionWitness::new([(1, 4)]),
            PartitionWitness::new([(1, 2), (2, 1)]),
            PartitionWitness::new([(2, 2)]),
            PartitionWitness::new([(1, 1), (3, 1)]),
        ];
        assert_eq!(e.witnesses, expected);

        let capped = enumerate_partitions(&set("1,2,3"), &set("naturals"), 4, 2);
        assert_eq!(capped.witnesses, expected[..2]);
        assert!(capped.truncated);
    }

    #[test]
    fn verify_witness_examples() {
        let (a, m) = (set("pow2"), set("odds"));
        assert!(PartitionWitness::new([(8, 1)]).verify(&a, &m, 8));
        assert!(!PartitionWitness::new([(2, 2)]).verify(&a, &m, 4));
        assert!(PartitionWitness::new([(1, 1), (2, 1)]).verify(&a, &m, 3));
        assert!(!PartitionWitness::new([(1, 1), (2, 1)]).verify(&a, &m, 4));
        assert!(!PartitionWitness::new([(3, 1)]).verify(&a, &m, 3));
    }

    #[test]
    fn odd_totals_vanish_for_even_parts() {
        let t = Engine::new().count(&set("2"), &set("naturals"), 41).unwrap();
        for n in 1..=41 {
            assert_eq!(t.get(n).is_zero(), n % 2 == 1);
        }
    }

    #[test]
    fn union_multiplicities_use_progressions() {
        let a = set("naturals");
        let m = SetDescriptor::union(set("ap:1:4"), set("3,6,10"));
        let e = Engine::new();
        assert_eq!(
            e.count_ap_optimized(&a, &m, 80).unwrap().values(),
            e.count_generic(&a, &m, 80).unwrap().values()
        );
    }

    #[test]
    fn rational_factors() {
        let factor = |m: &str| RationalFactor::from_decomposition(&set(m).decompose().unwrap());
        // 1 + u/(1-u) = 1/(1-u)
        assert_eq!(factor("naturals"), RationalFactor { denominator_step: Some(1), numerator: vec![] });
        // 1 + u/(1-u^2) = (1 + u - u^2)/(1-u^2)
        assert_eq!(
            factor("odds"),
            RationalFactor { denominator_step: Some(2), numerator: vec![(1, 1), (2, -1)] }
        );
        assert_eq!(
            factor("notdiv3"),
            RationalFactor { denominator_step: Some(3), numerator: vec![(1, 1), (2, 1), (3, -1)] }
        );
        // progressions of different steps share the lcm
        assert_eq!(factor("ap:2:3").numerator, vec![(2, 1), (3, -1)]);
        assert_eq!(factor("2,5"), RationalFactor { denominator_step: None, numerator: vec![(2, 1), (5, 1)] });
    }

    #[test]
    fn csv_and_json_use_decimal_strings() {
        let t = Engine::new().count(&set("naturals"), &set("naturals"), 3).unwrap();
        assert_eq!(t.to_csv(), "n,p\n0,1\n1,1\n2,2\n3,3\n");
        let json: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["values"], serde_json::json!(["1", "1", "2", "3"]));
        assert_eq!(json["engine_path"], "ap_optimized");
        assert_eq!(json["parts"]["kind"], "naturals");
        let back: CountTable = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }
}
