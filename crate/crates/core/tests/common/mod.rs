#![allow(dead_code)]

use partmult::SetDescriptor;

fn set(text: &str) -> SetDescriptor {
    SetDescriptor::parse(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// (A, M) pairs shared by the oracle and bounds suites. The first six are
/// required; the rest add a self-power part set, a multiplicity set with no
/// progression form, and a union.
pub fn corpus() -> Vec<(SetDescriptor, SetDescriptor)> {
    [
        ("pow2", "odds"),
        ("pow3", "notdiv3"),
        ("1,2,3", "naturals"),
        ("2,3", "naturals"),
        ("factorials", "odds"),
        ("naturals", "ap:1:2"),
        ("selfpowers", "notdiv3"),
        ("ap:1:3", "pow2"),
        ("pow2|factorials", "evens"),
    ]
    .iter()
    .map(|(a, m)| (set(a), set(m)))
    .collect()
}
