//! Explicit constructions: the staircase function built from a rapidly
//! growing sequence, and the part/multiplicity pair `A = {a^i}`,
//! `M = {m : a does not divide m}` whose counts equal 1 at every power of `a`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decimal;
use crate::engine::{CountTable, Engine, EngineError};
use crate::sets::{SetDescriptor, SetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("sequence needs at least one term")]
    Empty,
    #[error("sequence must start at 1, got {0}")]
    BadFirstTerm(BigUint),
    #[error("term {index} violates n_(k+1) > 2 n_k^k (k = {k})")]
    GrowthViolated { index: usize, k: usize },
    #[error("{n} lies outside [1, {last}); extend the sequence first")]
    OutOfRange { n: BigUint, last: BigUint },
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// `n_1 = 1 < n_2 < ...` with `n_{k+1} > 2 n_k^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseSequence {
    #[serde(with = "decimal::vec")]
    terms: Vec<BigUint>,
}

impl StaircaseSequence {
    /// The least admissible sequence: `n_{k+1} = 2 n_k^k + 1`.
    pub fn minimal(len: usize) -> Result<Self, ConstructionError> {
        if len == 0 {
            return Err(ConstructionError::Empty);
        }
        let mut terms = vec![BigUint::one()];
        for k in 1..len {
            let next = terms[k - 1].pow(k as u32) * 2u32 + 1u32;
            terms.push(next);
        }
        Ok(StaircaseSequence { terms })
    }

    /// Validates a caller-supplied sequence. The error names the first
    /// offending index (0-based).
    pub fn from_terms(terms: Vec<BigUint>) -> Result<Self, ConstructionError> {
        let first = terms.first().ok_or(ConstructionError::Empty)?;
        if !first.is_one() {
            return Err(ConstructionError::BadFirstTerm(first.clone()));
        }
        for (i, pair) in terms.windows(2).enumerate() {
            let k = i + 1;
            if pair[1] <= pair[0].pow(k as u32) * 2u32 {
                return Err(ConstructionError::GrowthViolated { index: i + 1, k });
            }
        }
        Ok(StaircaseSequence { terms })
    }

    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    pub fn last(&self) -> &BigUint {
        self.terms.last().expect("sequences are nonempty")
    }

    /// `f(n) = n_k^k + (n - n_k)` for `n_k <= n < n_{k+1}`.
    pub fn eval(&self, n: &BigUint) -> Result<BigUint, ConstructionError> {
        if n.is_zero() || n >= self.last() {
            return Err(ConstructionError::OutOfRange { n: n.clone(), last: self.last().clone() });
        }
        // index of the bracket start, 0-based; the exponent is index + 1
        let idx = self.terms.partition_point(|t| t <= n) - 1;
        let base = &self.terms[idx];
        Ok(base.pow(idx as u32 + 1) + (n - base))
    }

    pub fn eval_u64(&self, n: u64) -> Result<BigUint, ConstructionError> {
        self.eval(&BigUint::from(n))
    }

    /// CSV `n,f` over `[from, to]`.
    pub fn to_csv(&self, from: u64, to: u64) -> Result<String, ConstructionError> {
        let mut out = String::from("n,f\n");
        for n in from..=to {
            out.push_str(&format!("{n},{}\n", self.eval_u64(n)?));
        }
        Ok(out)
    }
}

/// `(A, M) = ({a^i : i >= 0}, {m >= 1 : a does not divide m})`.
pub fn thm_am_pair(base: u64) -> Result<(SetDescriptor, SetDescriptor), ConstructionError> {
    Ok((SetDescriptor::geometric(base)?, SetDescriptor::not_divisible(base)?))
}

/// Outcome of checking `p >= 1` on `[1, n_max]` and `p = 1` at powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmReport {
    pub base: u64,
    pub n_max: usize,
    /// `(a^r, p(a^r))` for every power `<= n_max`.
    pub powers: Vec<(u64, String)>,
    /// `n` in `[1, n_max]` with `p(n) = 0`.
    pub zero_counts: Vec<usize>,
    /// Powers where `p != 1`.
    pub non_unique_powers: Vec<u64>,
}

impl AmReport {
    pub fn passed(&self) -> bool {
        self.zero_counts.is_empty() && self.non_unique_powers.is_empty()
    }
}

/// Builds the table for the pair at `base` and checks both claims exactly.
pub fn verify_power_uniqueness(
    engine: &Engine,
    base: u64,
    n_max: usize,
) -> Result<(AmReport, CountTable), ConstructionError> {
    let (parts, mults) = thm_am_pair(base)?;
    let table = engine.count(&parts, &mults, n_max)?;
    let zero_counts = (1..=n_max).filter(|&n| table.get(n).is_zero()).collect();
    let mut powers = Vec::new();
    let mut non_unique_powers = Vec::new();
    for power in parts.enumerate_up_to(n_max as u64) {
        let p = table.get(power as usize);
        if !p.is_one() {
            non_unique_powers.push(power);
        }
        powers.push((power, p.to_string()));
    }
    let report = AmReport { base, n_max, powers, zero_counts, non_unique_powers };
    Ok((report, table))
}
