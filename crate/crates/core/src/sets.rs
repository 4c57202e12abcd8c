//! Symbolic descriptions of (possibly infinite) sets of positive integers.
//!
//! A [`SetDescriptor`] is never materialized; every query takes an explicit
//! upper bound. Descriptors are used both for the allowed parts `A` and the
//! allowed nonzero multiplicities `M`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("set elements must be positive integers, got {0}")]
    NonPositive(u64),
    #[error("{what} must be at least 2, got {value}")]
    ParameterTooSmall { what: &'static str, value: u64 },
    #[error("finite set must contain at least one element")]
    EmptyFinite,
    #[error("no elements of the set are <= {bound} once {excluded} is removed")]
    EmptyTruncation { excluded: u64, bound: u64 },
    #[error("need at least {needed} elements <= {bound}, found {found}")]
    TooFewElements { needed: usize, bound: u64, found: usize },
    #[error("cannot parse set shorthand {0:?}")]
    Shorthand(String),
}

/// The shape of a set. Matches the JSON interchange format one-to-one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SetKind {
    Finite {
        elements: Vec<u64>,
    },
    Naturals,
    /// `{base^i : i >= 0}`; contains 1.
    Geometric {
        base: u64,
    },
    /// `{k! : k >= 1}`.
    Factorials,
    /// `{k^k : k >= 1}`.
    SelfPowers,
    /// `{first + j*step : j >= 0}`.
    #[serde(rename = "ap")]
    ArithmeticProgression {
        first: u64,
        step: u64,
    },
    /// Positive integers not divisible by `modulus`.
    #[serde(rename = "notdiv")]
    NotDivisible {
        modulus: u64,
    },
    Union {
        left: Box<SetDescriptor>,
        right: Box<SetDescriptor>,
    },
}

/// A validated, immutable set description.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SetKind", into = "SetKind")]
pub struct SetDescriptor {
    kind: SetKind,
}

impl TryFrom<SetKind> for SetDescriptor {
    type Error = SetError;

    fn try_from(kind: SetKind) -> Result<Self, SetError> {
        let kind = match kind {
            SetKind::Finite { mut elements } => {
                if let Some(&z) = elements.iter().find(|&&e| e == 0) {
                    return Err(SetError::NonPositive(z));
                }
                if elements.is_empty() {
                    return Err(SetError::EmptyFinite);
                }
                elements.sort_unstable();
                elements.dedup();
                SetKind::Finite { elements }
            }
            SetKind::Geometric { base } if base < 2 => {
                return Err(SetError::ParameterTooSmall { what: "base", value: base })
            }
            SetKind::NotDivisible { modulus } if modulus < 2 => {
                return Err(SetError::ParameterTooSmall { what: "modulus", value: modulus })
            }
            SetKind::ArithmeticProgression { first, step } => {
                if first == 0 {
                    return Err(SetError::NonPositive(first));
                }
                if step == 0 {
                    return Err(SetError::NonPositive(step));
                }
                SetKind::ArithmeticProgression { first, step }
            }
            other => other,
        };
        Ok(SetDescriptor { kind })
    }
}

impl From<SetDescriptor> for SetKind {
    fn from(d: SetDescriptor) -> Self {
        d.kind
    }
}

impl SetDescriptor {
    pub fn finite<I: IntoIterator<Item = u64>>(elements: I) -> Result<Self, SetError> {
        SetKind::Finite { elements: elements.into_iter().collect() }.try_into()
    }

    pub fn naturals() -> Self {
        SetDescriptor { kind: SetKind::Naturals }
    }

    pub fn geometric(base: u64) -> Result<Self, SetError> {
        SetKind::Geometric { base }.try_into()
    }

    pub fn factorials() -> Self {
        SetDescriptor { kind: SetKind::Factorials }
    }

    pub fn self_powers() -> Self {
        SetDescriptor { kind: SetKind::SelfPowers }
    }

    pub fn arithmetic(first: u64, step: u64) -> Result<Self, SetError> {
        SetKind::ArithmeticProgression { first, step }.try_into()
    }

    pub fn not_divisible(modulus: u64) -> Result<Self, SetError> {
        SetKind::NotDivisible { modulus }.try_into()
    }

    pub fn union(left: SetDescriptor, right: SetDescriptor) -> Self {
        SetDescriptor { kind: SetKind::Union { left: Box::new(left), right: Box::new(right) } }
    }

    pub fn kind(&self) -> &SetKind {
        &self.kind
    }

    /// Parses either descriptor JSON or a shorthand string.
    ///
    /// Shorthands: `naturals`, `odds` (= `notdiv2`), `evens`, `pow<a>`,
    /// `notdiv<a>`, `ap:<first>:<step>`, `factorials`, `selfpowers`, a comma
    /// list such as `1,2,3`, and `left|right` for unions.
    pub fn parse(text: &str) -> Result<Self, SetError> {
        let text = text.trim();
        if text.starts_with('{') {
            return serde_json::from_str(text).map_err(|e| SetError::Shorthand(e.to_string()));
        }
        if let Some((left, right)) = text.split_once('|') {
            return Ok(Self::union(Self::parse(left)?, Self::parse(right)?));
        }
        let bad = || SetError::Shorthand(text.to_string());
        let number = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
        match text {
            "naturals" | "N" => return Ok(Self::naturals()),
            "odds" => return Self::not_divisible(2),
            "evens" => return Self::arithmetic(2, 2),
            "factorials" => return Ok(Self::factorials()),
            "selfpowers" => return Ok(Self::self_powers()),
            _ => {}
        }
        if let Some(rest) = text.strip_prefix("pow") {
            return Self::geometric(number(rest)?);
        }
        if let Some(rest) = text.strip_prefix("notdiv") {
            return Self::not_divisible(number(rest)?);
        }
        if let Some(rest) = text.strip_prefix("ap:") {
            let (first, step) = rest.split_once(':').ok_or_else(bad)?;
            return Self::arithmetic(number(first)?, number(step)?);
        }
        let elements = text.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
        Self::finite(elements)
    }

    /// Elements `<= x` in increasing order.
    pub fn enumerate_up_to(&self, x: u64) -> Vec<u64> {
        match &self.kind {
            SetKind::Finite { elements } => {
                let end = elements.partition_point(|&e| e <= x);
                elements[..end].to_vec()
            }
            SetKind::Naturals => (1..=x).collect(),
            SetKind::Geometric { base } => {
                let mut out = Vec::new();
                let mut power = 1u64;
                while power <= x {
                    out.push(power);
                    match power.checked_mul(*base) {
                        Some(next) => power = next,
                        None => break,
                    }
                }
                out
            }
            SetKind::Factorials => {
                let mut out = Vec::new();
                let mut fact = 1u64;
                let mut k = 1u64;
                while fact <= x {
                    out.push(fact);
                    k += 1;
                    match fact.checked_mul(k) {
                        Some(next) => fact = next,
                        None => break,
                    }
                }
                out
            }
            SetKind::SelfPowers => {
                let mut out = Vec::new();
                for k in 1u32.. {
                    match (k as u64).checked_pow(k) {
                        Some(v) if v <= x => out.push(v),
                        _ => break,
                    }
                }
                out
            }
            SetKind::ArithmeticProgression { first, step } => {
                if *first > x {
                    return Vec::new();
                }
                (*first..=x).step_by(*step as usize).collect()
            }
            SetKind::NotDivisible { modulus } => (1..=x).filter(|m| m % modulus != 0).collect(),
            SetKind::Union { left, right } => {
                merge_dedup(&left.enumerate_up_to(x), &right.enumerate_up_to(x))
            }
        }
    }

    /// `|{e in s : e <= x}|`.
    pub fn counting_function(&self, x: u64) -> u64 {
        match &self.kind {
            SetKind::Naturals => x,
            SetKind::ArithmeticProgression { first, step } => {
                if *first > x {
                    0
                } else {
                    (x - first) / step + 1
                }
            }
            SetKind::NotDivisible { modulus } => x - x / modulus,
            _ => self.enumerate_up_to(x).len() as u64,
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        match &self.kind {
            SetKind::Finite { elements } => elements.binary_search(&n).is_ok(),
            SetKind::Naturals => true,
            SetKind::Geometric { base } => {
                let mut m = n;
                while m.is_multiple_of(*base) {
                    m /= base;
                }
                m == 1
            }
            SetKind::Factorials => {
                let mut m = n;
                let mut k = 2;
                while m > 1 && m.is_multiple_of(k) {
                    m /= k;
                    k += 1;
                }
                m == 1
            }
            SetKind::SelfPowers => self.enumerate_up_to(n).last() == Some(&n),
            SetKind::ArithmeticProgression { first, step } => {
                n >= *first && (n - first).is_multiple_of(*step)
            }
            SetKind::NotDivisible { modulus } => !n.is_multiple_of(*modulus),
            SetKind::Union { left, right } => left.contains(n) || right.contains(n),
        }
    }

    /// gcd of `{e in s : e <= bound, e != excluded}`.
    ///
    /// This is a truncation: the gcd of the whole (infinite) set divides the
    /// returned value, and equals it once the bound is large enough.
    pub fn gcd_without(&self, excluded: u64, bound: u64) -> Result<u64, SetError> {
        self.enumerate_up_to(bound)
            .into_iter()
            .filter(|&e| e != excluded)
            .reduce(|g, e| g.gcd(&e))
            .ok_or(SetError::EmptyTruncation { excluded, bound })
    }

    /// Splits the set into disjoint arithmetic progressions plus a finite
    /// remainder, when its shape allows it.
    pub fn decompose(&self) -> Option<Decomposition> {
        match &self.kind {
            SetKind::Naturals => Some(Decomposition::progressions(vec![Progression::new(1, 1)])),
            SetKind::ArithmeticProgression { first, step } => {
                Some(Decomposition::progressions(vec![Progression::new(*first, *step)]))
            }
            SetKind::NotDivisible { modulus } => Some(Decomposition::progressions(
                (1..*modulus).map(|r| Progression::new(r, *modulus)).collect(),
            )),
            SetKind::Finite { elements } => {
                Some(Decomposition { progressions: Vec::new(), singles: elements.clone() })
            }
            SetKind::Union { left, right } => {
                let l = left.decompose()?;
                let r = right.decompose()?;
                self.merge_decompositions(&l, &r)
            }
            SetKind::Geometric { .. } | SetKind::Factorials | SetKind::SelfPowers => None,
        }
    }

    /// Unions are eventually periodic with period lcm(steps) past the largest
    /// start; below that threshold elements are listed individually.
    fn merge_decompositions(&self, l: &Decomposition, r: &Decomposition) -> Option<Decomposition> {
        const MAX_PERIOD: u64 = 1 << 12;
        const MAX_SINGLES: u64 = 1 << 16;

        let all = l.progressions.iter().chain(&r.progressions);
        let mut period = 1u64;
        let mut threshold = 1u64;
        for p in all {
            period = period.lcm(&p.step);
            if period > MAX_PERIOD {
                return None;
            }
            threshold = threshold.max(p.first);
        }
        let max_single = l.singles.iter().chain(&r.singles).copied().max().unwrap_or(0);
        if l.progressions.is_empty() && r.progressions.is_empty() {
            return Some(Decomposition {
                progressions: Vec::new(),
                singles: merge_dedup(&l.singles, &r.singles),
            });
        }
        threshold = threshold.max(max_single + 1);
        if threshold > MAX_SINGLES {
            return None;
        }
        let singles = (1..threshold).filter(|&e| self.contains(e)).collect();
        let progressions = (threshold..threshold + period)
            .filter(|&e| self.contains(e))
            .map(|e| Progression::new(e, period))
            .collect();
        Some(Decomposition { progressions, singles })
    }
}

impl fmt::Display for SetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SetKind::Finite { elements } => {
                let list: Vec<String> = elements.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", list.join(","))
            }
            SetKind::Naturals => write!(f, "N"),
            SetKind::Geometric { base } => write!(f, "{{{base}^i}}"),
            SetKind::Factorials => write!(f, "{{k!}}"),
            SetKind::SelfPowers => write!(f, "{{k^k}}"),
            SetKind::ArithmeticProgression { first, step } => write!(f, "{{{first}+{step}j}}"),
            SetKind::NotDivisible { modulus } => write!(f, "{{m : {modulus} !| m}}"),
            SetKind::Union { left, right } => write!(f, "({left} u {right})"),
        }
    }
}

/// `{first + j*step : j >= 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progression {
    pub first: u64,
    pub step: u64,
}

impl Progression {
    pub fn new(first: u64, step: u64) -> Self {
        Progression { first, step }
    }
}

/// A set written as a disjoint union of progressions and finitely many
/// extra elements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    pub progressions: Vec<Progression>,
    pub singles: Vec<u64>,
}

impl Decomposition {
    fn progressions(progressions: Vec<Progression>) -> Self {
        Decomposition { progressions, singles: Vec::new() }
    }
}

fn merge_dedup(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let next = a[i].min(b[j]);
        if a[i] == next {
            i += 1;
        }
        if b[j] == next {
            j += 1;
        }
        out.push(next);
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn corpus() -> Vec<SetDescriptor> {
        vec![
            SetDescriptor::finite([7, 3, 3, 12]).unwrap(),
            SetDescriptor::naturals(),
            SetDescriptor::geometric(2).unwrap(),
            SetDescriptor::geometric(5).unwrap(),
            SetDescriptor::factorials(),
            SetDescriptor::self_powers(),
            SetDescriptor::arithmetic(4, 3).unwrap(),
            SetDescriptor::not_divisible(3).unwrap(),
            SetDescriptor::union(SetDescriptor::finite([5]).unwrap(), SetDescriptor::geometric(3).unwrap()),
            SetDescriptor::union(
                SetDescriptor::arithmetic(1, 4).unwrap(),
                SetDescriptor::arithmetic(2, 6).unwrap(),
            ),
        ]
    }

    #[test]
    fn enumerate_examples() {
        let pow2 = SetDescriptor::geometric(2).unwrap();
        assert_eq!(pow2.enumerate_up_to(10), vec![1, 2, 4, 8]);
        let nd3 = SetDescriptor::not_divisible(3).unwrap();
        assert_eq!(nd3.enumerate_up_to(7), vec![1, 2, 4, 5, 7]);
        assert_eq!(SetDescriptor::factorials().enumerate_up_to(30), vec![1, 2, 6, 24]);
        assert_eq!(SetDescriptor::self_powers().enumerate_up_to(300), vec![1, 4, 27, 256]);
    }

    #[test]
    fn counting_examples() {
        assert_eq!(SetDescriptor::geometric(2).unwrap().counting_function(10), 4);
        assert_eq!(SetDescriptor::naturals().counting_function(100), 100);
        assert_eq!(SetDescriptor::not_divisible(2).unwrap().counting_function(9), 5);
    }

    #[test]
    fn contains_examples() {
        let sp = SetDescriptor::self_powers();
        assert!(sp.contains(27));
        assert!(!sp.contains(28));
        let u =
            SetDescriptor::union(SetDescriptor::finite([5]).unwrap(), SetDescriptor::geometric(3).unwrap());
        assert!(u.contains(5));
        assert!(u.contains(9));
        assert!(!u.contains(6));
        assert!(SetDescriptor::factorials().contains(720));
        assert!(!SetDescriptor::factorials().contains(12));
    }

    #[test]
    fn gcd_without_examples() {
        let f23 = SetDescriptor::finite([2, 3]).unwrap();
        assert_eq!(f23.gcd_without(2, 10), Ok(3));
        assert_eq!(SetDescriptor::finite([1, 2, 3]).unwrap().gcd_without(1, 10), Ok(1));
        assert_eq!(SetDescriptor::geometric(2).unwrap().gcd_without(1, 100), Ok(2));
        assert!(matches!(
            SetDescriptor::finite([4]).unwrap().gcd_without(4, 10),
            Err(SetError::EmptyTruncation { .. })
        ));
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        assert!(SetDescriptor::geometric(1).is_err());
        assert!(SetDescriptor::not_divisible(0).is_err());
        assert!(SetDescriptor::finite([0, 1]).is_err());
        assert!(SetDescriptor::finite([]).is_err());
        assert!(SetDescriptor::arithmetic(0, 1).is_err());
        assert_eq!(
            SetDescriptor::finite([3, 1, 3, 2]).unwrap().kind(),
            &SetKind::Finite { elements: vec![1, 2, 3] }
        );
    }

    #[test]
    fn json_interchange() {
        let cases = [
            (r#"{"kind":"geometric","base":2}"#, SetDescriptor::geometric(2).unwrap()),
            (r#"{"kind":"notdiv","modulus":2}"#, SetDescriptor::not_divisible(2).unwrap()),
            (r#"{"kind":"finite","elements":[1,2,3]}"#, SetDescriptor::finite([1, 2, 3]).unwrap()),
            (r#"{"kind":"ap","first":1,"step":2}"#, SetDescriptor::arithmetic(1, 2).unwrap()),
            (r#"{"kind":"factorials"}"#, SetDescriptor::factorials()),
            (r#"{"kind":"selfpowers"}"#, SetDescriptor::self_powers()),
            (r#"{"kind":"naturals"}"#, SetDescriptor::naturals()),
        ];
        for (json, expected) in cases {
            let parsed: SetDescriptor = serde_json::from_str(json).unwrap();
            assert_eq!(parsed, expected);
            assert_eq!(serde_json::to_string(&parsed).unwrap(), json);
        }
        let union = r#"{"kind":"union","left":{"kind":"finite","elements":[5]},"right":{"kind":"geometric","base":3}}"#;
        let parsed: SetDescriptor = serde_json::from_str(union).unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), union);

        for bad in [
            r#"{"kind":"geometric","base":1}"#,
            r#"{"kind":"notdiv","modulus":0}"#,
            r#"{"kind":"finite","elements":[0,2]}"#,
            r#"{"kind":"finite","elements":[-1]}"#,
            r#"{"kind":"ap","first":0,"step":2}"#,
            r#"{"kind":"primes"}"#,
        ] {
            assert!(serde_json::from_str::<SetDescriptor>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn shorthand_matches_json() {
        let pairs = [
            ("pow2", r#"{"kind":"geometric","base":2}"#),
            ("odds", r#"{"kind":"notdiv","modulus":2}"#),
            ("factorials", r#"{"kind":"factorials"}"#),
            ("1,2,3", r#"{"kind":"finite","elements":[1,2,3]}"#),
            ("ap:1:2", r#"{"kind":"ap","first":1,"step":2}"#),
            ("naturals", r#"{"kind":"naturals"}"#),
        ];
        for (short, json) in pairs {
            assert_eq!(SetDescriptor::parse(short).unwrap(), SetDescriptor::parse(json).unwrap());
        }
        assert!(SetDescriptor::parse("pow1").is_err());
        assert!(SetDescriptor::parse("1,x").is_err());
    }

    #[test]
    fn not_divisible_meets_power_hypotheses() {
        for a in 2..=12u64 {
            let m = SetDescriptor::not_divisible(a).unwrap();
            assert_eq!(m.enumerate_up_to(a - 1), (1..a).collect::<Vec<_>>());
            assert!(m.enumerate_up_to(1000).iter().all(|e| e % a != 0));
        }
    }

    #[test]
    fn geometric_counting_is_logarithmic() {
        for a in 2..=7u64 {
            let s = SetDescriptor::geometric(a).unwrap();
            for x in 1..=5000u64 {
                let count = s.counting_function(x);
                let mut floor_log = 0u64;
                while a.pow(floor_log as u32 + 1) <= x {
                    floor_log += 1;
                }
                assert_eq!(count, floor_log + 1);
                assert!(count as f64 > (x as f64).ln() / (a as f64).ln());
            }
        }
    }

    #[test]
    fn decompositions_cover_the_set() {
        for s in corpus() {
            let Some(d) = s.decompose() else { continue };
            let mut covered = vec![0u32; 501];
            for p in &d.progressions {
                for e in (p.first..=500).step_by(p.step as usize) {
                    covered[e as usize] += 1;
                }
            }
            for &e in d.singles.iter().filter(|&&e| e <= 500) {
                covered[e as usize] += 1;
            }
            for e in 1..=500u64 {
                assert_eq!(covered[e as usize], s.contains(e) as u32, "{s} at {e}");
            }
        }
        assert!(SetDescriptor::factorials().decompose().is_none());
        assert_eq!(SetDescriptor::not_divisible(4).unwrap().decompose().unwrap().progressions.len(), 3);
    }

    #[test]
    fn enumeration_consistent_at_large_bound() {
        for s in corpus() {
            let x = 1_000_000;
            let elems = s.enumerate_up_to(x);
            assert!(elems.windows(2).all(|w| w[0] < w[1]), "{s}");
            assert_eq!(s.counting_function(x), elems.len() as u64, "{s}");
        }
    }

    proptest! {
        #[test]
        fn enumeration_invariants(idx in 0usize..10, x in 1u64..3000, y in 1u64..3000) {
            let s = &corpus()[idx];
            let elems = s.enumerate_up_to(x);
            prop_assert!(elems.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(elems.iter().all(|&e| e >= 1 && e <= x));
            prop_assert_eq!(s.counting_function(x), elems.len() as u64);
            let (lo, hi) = (x.min(y), x.max(y));
            prop_assert!(s.counting_function(lo) <= s.counting_function(hi));
        }

        #[test]
        fn contains_agrees_with_enumeration(idx in 0usize..10, n in 1u64..3000) {
            let s = &corpus()[idx];
            prop_assert_eq!(s.contains(n), s.enumerate_up_to(n).last() == Some(&n));
        }

        #[test]
        fn union_membership(a in prop::collection::vec(1u64..200, 1..8), m in 2u64..6, n in 1u64..400) {
            let left = SetDescriptor::finite(a.clone()).unwrap();
            let right = SetDescriptor::not_divisible(m).unwrap();
            let u = SetDescriptor::union(left.clone(), right.clone());
            prop_assert_eq!(u.contains(n), left.contains(n) || right.contains(n));
        }
    }
}
