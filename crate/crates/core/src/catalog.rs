//! Built-in regression table of amalgamations with known diameters and
//! completeness behaviour.

use rayon::prelude::*;

use crate::classify::{ClassificationReport, REGULAR_IDEAL_UNSATISFIABLE};
use crate::error::Result;
use crate::scenario::parse_scenario;

#[derive(Clone, Debug)]
pub struct CatalogRow {
    pub id: String,
    pub scenario: String,
    pub expected_diameter: u32,
    /// Expected completeness of the graph, when the row is about completeness.
    pub expected_complete: Option<bool>,
    /// The completeness equivalence is expected to be exempt.
    pub expect_exempt: bool,
}

fn row(id: &str, scenario: &str, d: u32) -> CatalogRow {
    CatalogRow {
        id: id.to_string(),
        scenario: scenario.to_string(),
        expected_diameter: d,
        expected_complete: None,
        expect_exempt: false,
    }
}

fn completeness_row(id: &str, scenario: &str, d: u32, complete: bool, exempt: bool) -> CatalogRow {
    CatalogRow { expected_complete: Some(complete), expect_exempt: exempt, ..row(id, scenario, d) }
}

pub fn catalog() -> Vec<CatalogRow> {
    let mut rows = vec![
        row("Z9⋉Z9", "R=Z9; M=Z9; construction=idealization", 2),
        row("Z8⋉Z2", "R=Z8; M=Z2; construction=idealization", 2),
        row("Z6⋉Z6", "R=Z6; M=Z6; construction=idealization", 3),
        row("(Z6×Z6)⋉Z6", "R=Z6*Z6; M=Z6; action=project(1); construction=idealization", 3),
    ];
    // every nonzero proper ideal of Z6 x Z6 is generated by one pair
    for a in ["0", "1", "2", "3"] {
        for b in ["0", "1", "2", "3"] {
            if (a == "0" && b == "0") || (a == "1" && b == "1") {
                continue;
            }
            rows.push(row(
                &format!("Z12 -> Z6×Z6, J=({a},{b})"),
                &format!("R=Z12; S=Z6*Z6; f=natural; J=gen(({a}, {b}))"),
                3,
            ));
        }
    }
    rows.extend([
        row("Z6 -> Z6[x]/(x^4), J=(x)", "R=Z6; S=Z6[x]/(x^4); f=natural; J=gen(x)", 3),
        row("Z6⋈{0,2,4}", "R=Z6; J={0, 2, 4}; construction=duplication", 3),
        row("Z9⋈Z(Z9)", "R=Z9; J={0, 3, 6}; construction=duplication", 1),
        row("Z8 -> Z4, J={0,2}", "R=Z8; S=Z4; f=natural; J={0, 2}", 2),
        row("(Z2×Z2)⋈(Z2×0)", "R=Z2*Z2; J=gen((1, 0)); construction=duplication", 3),
        row("Z6⋈{0,3}", "R=Z6; J={0, 3}; construction=duplication", 3),
        row("Z8⋈{0,4}", "R=Z8; J={0, 4}; construction=duplication", 2),
        row("Z4 -> Z2×Z2[x]/(x^2), J=(0,x)", "R=Z4; S=Z2*Z2[x]/(x^2); f=natural; J=gen((0, x))", 1),
        row("Z2×Z4 -> Z2×Z2, J=0×Z2", "R=Z2*Z4; S=Z2*Z2; f=natural; J=gen((0, 1))", 3),
        row("Z6×Z3 -> Z3×Z3, J=0×Z3", "R=Z6*Z3; S=Z3*Z3; f=natural; J=gen((0, 1))", 3),
        row(
            "Z4[x]/(x^2) -> Z4×Z4, a+bx -> (a,a), J=0×Z4",
            "R=Z4[x]/(x^2); S=Z4*Z4; f=map { x -> (0, 0) }; J=gen((0, 1))",
            3,
        ),
        row("Z6 -> Z2[x]/(x^3), J=(x)", "R=Z6; S=Z2[x]/(x^3); f=natural; J=gen(x)", 3),
        row("Z4 -> Z4[x]/(x^3), J=(x)", "R=Z4; S=Z4[x]/(x^3); f=natural; J=gen(x)", 2),
        completeness_row("Z2 -> Z2×Z2, J=(0,1)", "R=Z2; S=Z2*Z2; f=natural; J=gen((0, 1))", 1, true, true),
        completeness_row("Z2 -> Z2[x]/(x^3), J=(x)", "R=Z2; S=Z2[x]/(x^3); f=natural; J=gen(x)", 2, false, false),
        completeness_row("Z2 -> Z2[x]/(x^3), J=(x^2)", "R=Z2; S=Z2[x]/(x^3); f=natural; J=gen(x^2)", 0, true, false),
    ]);
    rows
}

#[derive(Clone, Debug)]
pub struct RowOutcome {
    pub row: CatalogRow,
    pub report: Option<ClassificationReport>,
    pub passed: bool,
    /// Why the row failed, empty when it passed.
    pub detail: String,
}

pub fn check_row(row: &CatalogRow) -> RowOutcome {
    match run_row(row) {
        Ok(report) => {
            let mut problems = Vec::new();
            if report.oracle_diameter != row.expected_diameter {
                problems.push(format!("oracle diameter {} != {}", report.oracle_diameter, row.expected_diameter));
            }
            if !report.agreement {
                problems.push(format!("predicted diameter {}", report.predicted_diameter));
            }
            if let Some(c) = row.expected_complete {
                if report.graph_complete != c {
                    problems.push(format!("complete = {}", report.graph_complete));
                }
            }
            if report.completeness_exempt != row.expect_exempt {
                problems.push(format!("completeness exempt = {}", report.completeness_exempt));
            }
            if report.regular_ideal_rule != REGULAR_IDEAL_UNSATISFIABLE {
                problems.push(format!("regular-ideal rule: {}", report.regular_ideal_rule));
            }
            problems.extend(report.violations.iter().map(|v| format!("{}: {}", v.theorem, v.witness)));
            RowOutcome { row: row.clone(), passed: problems.is_empty(), detail: problems.join("; "), report: Some(report) }
        }
        Err(e) => RowOutcome { row: row.clone(), report: None, passed: false, detail: e.to_string() },
    }
}

fn run_row(row: &CatalogRow) -> Result<ClassificationReport> {
    parse_scenario(&row.scenario)?.resolve()?.cross_check()
}

/// Every row, in table order.
pub fn verify_catalog() -> Vec<RowOutcome> {
    catalog().par_iter().map(check_row).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_scenarios_parse() {
        let rows = catalog();
        assert!(rows.len() >= 20);
        for r in &rows {
            parse_scenario(&r.scenario).unwrap_or_else(|e| panic!("{}: {e}", r.id));
        }
    }

    #[test]
    fn small_rows_pass() {
        for r in catalog().iter().filter(|r| r.id.starts_with("Z2 ->") || r.id.starts_with("Z8")) {
            let out = check_row(r);
            assert!(out.passed, "{}: {}", r.id, out.detail);
        }
    }
}
