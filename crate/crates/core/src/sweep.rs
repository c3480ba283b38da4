//! Exhaustive sweeps over families of small amalgamations.
//!
//! Cases are enumerated in lexicographic parameter order and each carries the
//! scenario text that reproduces it. Checking runs in parallel but results
//! keep enumeration order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{cross_check_realized, Violation};
use crate::error::{Result, ZdaError};
use crate::ring::{direct_product, make_zn};
use crate::scenario::parse_scenario;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `Z_n ⋈ I` over all nonzero proper ideals `I`.
    Duplication,
    /// `Z_n -> Z_m` with `m | n` over all nonzero proper ideals `J` of `Z_m`.
    Amalgamation,
    /// `Z_n ⋉ Z_m` with `m | n`.
    Idealization,
    /// `Z_m -> Z_m × Z_n`, `J = 0 × Z_n`, realizing `Z_m × Z_n` for composite `m`, `n | m`.
    Product,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Duplication, Family::Amalgamation, Family::Idealization, Family::Product];

    pub fn name(self) -> &'static str {
        match self {
            Family::Duplication => "duplication",
            Family::Amalgamation => "amalgamation",
            Family::Idealization => "idealization",
            Family::Product => "product",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ZdaError;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            ZdaError::InvalidParameter(format!(
                "unknown family {s:?}; expected one of duplication, amalgamation, idealization, product"
            ))
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepCase {
    pub index: usize,
    pub scenario: String,
    /// Diameter the family is known to have, if any.
    pub expected_diameter: Option<u32>,
}

fn proper_divisors(n: u64) -> impl Iterator<Item = u64> {
    (2..n).filter(move |d| n.is_multiple_of(*d))
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// All cases of `family` with modulus at most `max_n`.
pub fn enumerate(family: Family, max_n: u64) -> Vec<SweepCase> {
    let mut out = Vec::new();
    let mut push = |scenario: String, expected: Option<u32>| {
        out.push(SweepCase { index: out.len(), scenario, expected_diameter: expected })
    };
    for n in 2..=max_n {
        match family {
            Family::Duplication => {
                // ideals of Z_n are the (d) for d | n
                for d in proper_divisors(n) {
                    push(format!("R=Z{n}; J=gen({d}); construction=duplication"), None);
                }
            }
            Family::Amalgamation => {
                for m in (2..=n).filter(|m| n % m == 0) {
                    for d in proper_divisors(m) {
                        push(format!("R=Z{n}; S=Z{m}; f=natural; J=gen({d})"), None);
                    }
                }
            }
            Family::Idealization => {
                for m in (2..=n).filter(|m| n % m == 0) {
                    push(format!("R=Z{n}; M=Z{m}; construction=idealization"), None);
                }
            }
            Family::Product => {
                if is_prime(n) {
                    continue;
                }
                for k in (2..=n).filter(|k| n % k == 0) {
                    push(format!("R=Z{n}; S=Z{n}*Z{k}; f=natural; J=gen((0, 1))"), Some(3));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseFailure {
    pub index: usize,
    pub scenario: String,
    pub problems: Vec<Violation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub family: Family,
    pub max_n: u64,
    pub instances: usize,
    /// oracle diameter -> count
    pub by_diameter: BTreeMap<u32, usize>,
    pub agreements: usize,
    pub failures: Vec<CaseFailure>,
}

impl SweepSummary {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty() && self.agreements == self.instances
    }
}

/// Cross-check every case. Input errors abort the sweep; theorem
/// violations are collected per case.
pub fn run_sweep(family: Family, max_n: u64) -> Result<SweepSummary> {
    let cases = enumerate(family, max_n);
    let results: Vec<Result<(u32, bool, Vec<Violation>)>> = cases.par_iter().map(|c| run_case(family, c)).collect();
    let mut by_diameter = BTreeMap::new();
    let mut agreements = 0;
    let mut failures = Vec::new();
    for (case, res) in cases.iter().zip(results) {
        let (d, agree, problems) = res?;
        *by_diameter.entry(d).or_insert(0) += 1;
        agreements += usize::from(agree);
        if !problems.is_empty() {
            failures.push(CaseFailure { index: case.index, scenario: case.scenario.clone(), problems });
        }
    }
    Ok(SweepSummary { family, max_n, instances: cases.len(), by_diameter, agreements, failures })
}

fn run_case(family: Family, case: &SweepCase) -> Result<(u32, bool, Vec<Violation>)> {
    let inst = parse_scenario(&case.scenario)?.resolve()?;
    let report = match family {
        Family::Product => {
            let (m, k) = (inst.spec.base().size() as u64, inst.spec.ideal().len() as u64);
            cross_check_realized(&inst.spec, &direct_product(&make_zn(m)?, &make_zn(k)?)?)?
        }
        _ => inst.cross_check()?,
    };
    let mut problems = report.violations.clone();
    if let Some(e) = case.expected_diameter {
        if report.oracle_diameter != e {
            problems.push(Violation {
                theorem: format!("family {family} has diameter {e}"),
                witness: format!("oracle diameter {}", report.oracle_diameter),
            });
        }
    }
    Ok((report.oracle_diameter, report.agreement, problems))
}
