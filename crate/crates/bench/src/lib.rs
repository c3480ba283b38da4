//! Fixtures shared by the benchmarks.

use zda_core::scenario::Instance;
use zda_core::{parse_scenario, AmalgamSpec};

/// Scenarios of increasing carrier size.
pub const SCENARIOS: &[(&str, &str)] = &[
    ("z6_dup", "R=Z6; J={0, 3}; construction=duplication"),
    ("z12_to_z6xz6", "R=Z12; S=Z6*Z6; f=natural; J=gen((2, 3))"),
    ("z4_poly", "R=Z4; S=Z4[x]/(x^3); f=natural; J=gen(x)"),
    ("z24_idealization", "R=Z24; M=Z24; construction=idealization"),
];

pub fn instance(text: &str) -> Instance {
    parse_scenario(text).and_then(|s| s.resolve()).expect("fixture scenarios are valid")
}

pub fn spec(text: &str) -> AmalgamSpec {
    instance(text).spec
}
