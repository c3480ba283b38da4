//! Diameter predictions for `Γ(R ⋈^f J)` from ring-theoretic data alone,
//! checked against the breadth-first-search oracle.
//!
//! [`predict_diameter`] never builds the amalgamation; [`cross_check`] does,
//! and records every disagreement as a violation instead of stopping.

use serde::Serialize;

use crate::construct::{
    amalgamation, has_condition_star, verify_spectrum, z1_set, z2_set, AmalgamRing, AmalgamSpec, Properties,
};
use crate::error::{Result, ZdaError};
use crate::graph::{build_gamma, Diameter};
use crate::ring::FiniteRing;
use crate::spectrum::prime_spectrum;

pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of the regular-ideal criterion on a finite instance.
pub const REGULAR_IDEAL_UNSATISFIABLE: &str = "unsatisfiable in finite rings";

pub const PART_1: &str = "finite classification (1): R a field, |J•| = 1, J² = 0 => diameter 0";
pub const PART_2_BOOLEAN: &str = "finite classification (2): amalgam ≅ Z2×Z2 => diameter 1";
pub const PART_2_PROPERTIES: &str = "finite classification (2): properties (a)-(d) => diameter 1";
pub const PART_3_I: &str = "finite classification (3)(i): Z(R) an ideal, J ⊆ Nil(S) => diameter 2";
pub const PART_3_II: &str =
    "finite classification (3)(ii): J ∩ Nil(S) = 0, one prime of S avoids J, R a domain => diameter 2";
pub const PART_4: &str = "finite classification (4) => diameter 3";
pub const DIAM2_BC_NOT_A: &str = "J ⊆ Nil(S) with (b), (c) and not (a) => diameter 2";
pub const DIAM2_AB_NOT_C: &str = "J ⊆ Nil(S) with (a), (b) and not (c) => diameter 2";
pub const DIAM3_Z_NOT_IDEAL: &str = "Z(R) not an ideal => diameter 3";
pub const DIAM3_NIL_MEETS: &str = "J ⊄ Nil(S) and J ∩ Nil(S) ≠ 0 => diameter 3";

/// Everything the predictions read, computed from `(R, S, f, J)` directly.
#[derive(Clone, Debug, Serialize)]
pub struct SpecFacts {
    pub props: Properties,
    pub z_of_r_is_ideal: bool,
    pub j_in_nil_s: bool,
    pub j_meets_nil_s_trivially: bool,
    pub num_primes_s_avoiding_j: usize,
    pub r_is_domain: bool,
    pub r_is_field: bool,
    pub j_bullet_size: usize,
    pub j_squared_zero: bool,
    pub amalgam_is_z2xz2: bool,
    pub contraction_is_zero: bool,
}

impl SpecFacts {
    pub fn evaluate(spec: &AmalgamSpec) -> Result<Self> {
        let (r, j) = (spec.base(), spec.ideal());
        let num_primes_s_avoiding_j =
            prime_spectrum(spec.host())?.primes.iter().filter(|q| !j.is_subset(q)).count();
        Ok(SpecFacts {
            props: Properties::evaluate(spec),
            z_of_r_is_ideal: r.zero_divisors_form_ideal(),
            j_in_nil_s: j.contained_in_nil(),
            j_meets_nil_s_trivially: j.intersects_nil_trivially(),
            num_primes_s_avoiding_j,
            r_is_domain: r.is_domain(),
            r_is_field: r.is_field(),
            j_bullet_size: j.len() - 1,
            j_squared_zero: j.squares_to_zero(),
            amalgam_is_z2xz2: amalgam_is_boolean_four(spec),
            contraction_is_zero: spec.contraction().is_zero(),
        })
    }
}

/// Four elements, all idempotent, read off the pairs without building the ring.
fn amalgam_is_boolean_four(spec: &AmalgamSpec) -> bool {
    let (r, s, f) = (spec.base(), spec.host(), spec.hom());
    if r.size() * spec.ideal().len() != 4 {
        return false;
    }
    (0..r.size()).all(|x| {
        r.mul_ix(x, x) == x
            && spec.ideal().members().handles().all(|j| {
                let y = s.add_ix(f.apply_ix(x), j);
                s.mul_ix(y, y) == y
            })
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Prediction {
    pub diameter: u32,
    /// Which part of the finite classification fired, 1 to 4.
    pub part: u8,
    pub rules: Vec<String>,
}

/// The finite classification evaluated part by part. Exactly one part must
/// fire; anything else is a classification gap.
pub fn predict_diameter(spec: &AmalgamSpec) -> Result<Prediction> {
    predict_from_facts(&SpecFacts::evaluate(spec)?)
}

pub fn predict_from_facts(f: &SpecFacts) -> Result<Prediction> {
    let c1 = f.r_is_field && f.j_bullet_size == 1 && f.j_squared_zero;
    let c2 = f.amalgam_is_z2xz2 || f.props.all();
    let c3_i = f.z_of_r_is_ideal && f.j_in_nil_s;
    let c3_ii = f.j_meets_nil_s_trivially && f.num_primes_s_avoiding_j == 1 && f.r_is_domain;
    let c4 = (!f.z_of_r_is_ideal || !f.j_in_nil_s)
        && (!f.j_meets_nil_s_trivially || f.num_primes_s_avoiding_j > 1 || !f.r_is_domain);

    // parts (2) and (3) carry "diameter > 0" and "diameter > 1" guards
    let fire = [c1, c2 && !c1, (c3_i || c3_ii) && !c1 && !c2, c4];
    let fired: Vec<usize> = (0..4).filter(|&k| fire[k]).collect();
    if fired.len() != 1 {
        return Err(ZdaError::ClassificationGap(format!(
            "parts fired: {:?} (field {}, |J•| {}, J² = 0 {}, Z2×Z2 {}, (a)-(d) {:?}, Z(R) ideal {}, J ⊆ Nil {}, J ∩ Nil = 0 {}, primes avoiding J {}, domain {})",
            fired.iter().map(|k| k + 1).collect::<Vec<_>>(),
            f.r_is_field,
            f.j_bullet_size,
            f.j_squared_zero,
            f.amalgam_is_z2xz2,
            f.props.as_array(),
            f.z_of_r_is_ideal,
            f.j_in_nil_s,
            f.j_meets_nil_s_trivially,
            f.num_primes_s_avoiding_j,
            f.r_is_domain,
        )));
    }
    let part = fired[0] as u8 + 1;
    let rule = match part {
        1 => PART_1,
        2 if f.amalgam_is_z2xz2 => PART_2_BOOLEAN,
        2 => PART_2_PROPERTIES,
        3 if c3_i => PART_3_I,
        3 => PART_3_II,
        _ => PART_4,
    };
    Ok(Prediction { diameter: u32::from(part) - 1, part, rules: vec![rule.to_string()] })
}

/// The diameter-2 rules for nil `J` that apply to this instance.
pub fn diam2_rules(f: &SpecFacts) -> Vec<&'static str> {
    let p = f.props;
    let mut out = Vec::new();
    if f.j_in_nil_s && p.b && p.c && !p.a {
        out.push(DIAM2_BC_NOT_A);
    }
    if f.j_in_nil_s && p.a && p.b && !p.c {
        out.push(DIAM2_AB_NOT_C);
    }
    out
}

/// The diameter-3 shortcuts whose hypotheses hold.
pub fn diam3_shortcuts(f: &SpecFacts) -> Vec<&'static str> {
    let mut out = Vec::new();
    if !f.z_of_r_is_ideal {
        out.push(DIAM3_Z_NOT_IDEAL);
    }
    if !f.j_in_nil_s && !f.j_meets_nil_s_trivially {
        out.push(DIAM3_NIL_MEETS);
    }
    out
}

/// Whether `Z(R ⋈^f J)` is an ideal exactly when `Z(R)` is an ideal and
/// `J ⊆ Nil(S)`. The left side is a closure scan of the amalgamation.
pub fn z_ideal_lemma_check(a: &AmalgamRing) -> bool {
    let spec = a.spec();
    let lhs = a.ring().zero_divisors_form_ideal();
    let rhs = spec.base().zero_divisors_form_ideal() && spec.ideal().contained_in_nil();
    lhs == rhs
}

/// The regular-ideal criterion needs a regular element in `J` and in
/// `f⁻¹(J)`. In a finite ring a proper ideal holds only zero-divisors, so
/// the hypotheses never hold; finding a regular element here is an error.
pub fn regular_ideal_rule(spec: &AmalgamSpec) -> Result<&'static str> {
    let (r, s) = (spec.base(), spec.host());
    let j_regular = spec.ideal().members().handles().find(|&x| !s.zero_divisors().contains_handle(x));
    let c = spec.contraction();
    let c_regular = c.members().handles().find(|&x| !r.zero_divisors().contains_handle(x));
    if let Some(x) = j_regular {
        return Err(regular_witness(s, x));
    }
    if let Some(x) = c_regular {
        return Err(regular_witness(r, x));
    }
    Ok(REGULAR_IDEAL_UNSATISFIABLE)
}

fn regular_witness(ring: &FiniteRing, x: usize) -> ZdaError {
    ZdaError::TheoremViolation {
        theorem: "proper ideals of finite rings consist of zero-divisors".into(),
        witness: format!("{} in {}", ring.name_ix(x), ring.label()),
    }
}

/// The three statements of the completeness characterisation.
#[derive(Clone, Debug, Serialize)]
pub struct CompletenessReport {
    pub graph_complete: bool,
    pub props_abcd_all: bool,
    pub z_squared_zero: bool,
    /// Hypotheses under which the three statements are equivalent.
    pub hypotheses: Vec<String>,
    /// No hypothesis holds, so disagreement is allowed.
    pub exempt: bool,
    /// The statements agree, or no hypothesis requires them to.
    pub equivalence_ok: bool,
    /// `(a)-(d) ⇒ Z² = 0 ⇒ complete`, which holds unconditionally.
    pub chain_ok: bool,
}

pub fn completeness_report(a: &AmalgamRing, facts: &SpecFacts, condition_star: bool) -> CompletenessReport {
    let graph_complete = build_gamma(a.ring()).is_complete();
    let props_abcd_all = facts.props.all();
    let z_squared_zero = a.ring().zero_divisors_square_to_zero();
    let mut hypotheses = Vec::new();
    if condition_star && !a.spec().base().is_domain() {
        hypotheses.push("condition (⋆) and Γ(R) nonempty".to_string());
    }
    if facts.j_squared_zero {
        hypotheses.push("J² = 0".to_string());
    }
    if !facts.amalgam_is_z2xz2 {
        hypotheses.push("finite and not Z2×Z2".to_string());
    }
    let agree = graph_complete == props_abcd_all && props_abcd_all == z_squared_zero;
    let exempt = hypotheses.is_empty();
    CompletenessReport {
        graph_complete,
        props_abcd_all,
        z_squared_zero,
        hypotheses,
        exempt,
        equivalence_ok: exempt || agree,
        chain_ok: (!props_abcd_all || z_squared_zero) && (!z_squared_zero || graph_complete),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub theorem: String,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub schema_version: u32,
    pub spec: String,
    pub ring: String,
    pub carrier_size: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub condition_star: bool,
    pub props_abcd: [bool; 4],
    pub z_of_r_is_ideal: bool,
    pub j_in_nil_s: bool,
    pub j_meets_nil_s_trivially: bool,
    pub num_primes_s_avoiding_j: usize,
    pub r_is_domain: bool,
    pub r_is_field: bool,
    pub j_bullet_size: usize,
    pub j_squared_zero: bool,
    pub amalgam_is_z2xz2: bool,
    pub predicted_diameter: u32,
    pub oracle_diameter: u32,
    pub graph_complete: bool,
    pub completeness_equivalence_ok: bool,
    pub completeness_exempt: bool,
    pub completeness: CompletenessReport,
    pub agreement: bool,
    pub applied_rules: Vec<String>,
    pub z_ideal_lemma_ok: bool,
    pub spectrum_ok: bool,
    pub regular_ideal_rule: String,
    pub notes: Vec<String>,
    pub violations: Vec<Violation>,
}

impl ClassificationReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }

    /// The first violation as an error.
    pub fn ensure_consistent(&self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(ZdaError::TheoremViolation { theorem: v.theorem.clone(), witness: v.witness.clone() }),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialises")
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn check(&mut self, ok: bool, theorem: &str, witness: impl FnOnce() -> String) {
        if !ok {
            self.0.push(Violation { theorem: theorem.to_string(), witness: witness() });
        }
    }
}

/// Build the amalgamation, run the oracle and every prediction, and collect
/// disagreements. Errors are reserved for invalid input and resource bounds.
pub fn cross_check(spec: &AmalgamSpec) -> Result<ClassificationReport> {
    let facts = SpecFacts::evaluate(spec)?;
    let a = amalgamation(spec)?;
    let ring = a.ring();
    let mut v = Collector(Vec::new());
    let mut notes = Vec::new();

    let gamma = build_gamma(ring);
    v.check(!gamma.is_empty(), "Γ of a finite amalgamation is nonempty", || ring.label().to_string());
    let oracle = match gamma.diameter() {
        Ok(Diameter::Value(d)) => Some(d),
        Ok(Diameter::Empty) => None,
        Err(ZdaError::TheoremViolation { theorem, witness }) => {
            v.0.push(Violation { theorem, witness });
            None
        }
        Err(e) => return Err(e),
    };

    let (predicted, mut applied_rules) = match predict_from_facts(&facts) {
        Ok(p) => (Some(p.diameter), p.rules),
        Err(ZdaError::ClassificationGap(why)) => {
            v.0.push(Violation { theorem: "exactly one classification part fires".into(), witness: why });
            (None, Vec::new())
        }
        Err(e) => return Err(e),
    };
    let agreement = predicted.is_some() && predicted == oracle;
    v.check(agreement, "finite classification", || {
        format!("predicted {predicted:?}, oracle {oracle:?} for {}", spec.describe())
    });

    for rule in diam2_rules(&facts) {
        applied_rules.push(rule.to_string());
        v.check(oracle == Some(2), rule, || format!("oracle {oracle:?} for {}", spec.describe()));
    }
    for rule in diam3_shortcuts(&facts) {
        applied_rules.push(rule.to_string());
        v.check(oracle == Some(3), rule, || format!("oracle {oracle:?} for {}", spec.describe()));
        v.check(predicted == Some(3), "diameter-3 shortcuts agree with part (4)", || spec.describe());
    }

    let condition_star = has_condition_star(&a);
    let (z1, z2, z) = (z1_set(&a), z2_set(&a), ring.zero_divisors());
    v.check(condition_star, "finite amalgamations satisfy condition (⋆)", || spec.describe());
    v.check(z2.is_subset(z) && z.is_subset(&z1.union(&z2)), "Z₂ ⊆ Z ⊆ Z₁ ∪ Z₂", || spec.describe());
    if facts.j_in_nil_s {
        v.check(condition_star, "J ⊆ Nil(S) implies condition (⋆)", || spec.describe());
    }

    let z_ideal_lemma_ok = z_ideal_lemma_check(&a);
    v.check(z_ideal_lemma_ok, "Z(amalgam) ideal iff Z(R) ideal and J ⊆ Nil(S)", || spec.describe());
    if ring.zero_divisors_form_ideal() {
        v.check(oracle.is_some_and(|d| d <= 2), "Z(A) an ideal implies diameter at most 2", || {
            format!("oracle {oracle:?} for {}", ring.label())
        });
    }
    check_base_lemma(spec.base(), &mut v)?;

    let spectrum_ok = match verify_spectrum(&a) {
        Ok(induced) => {
            if facts.j_in_nil_s {
                v.check(induced.from_host.is_empty(), "J ⊆ Nil(S) leaves no primes from S", || spec.describe());
            }
            true
        }
        Err(ZdaError::Internal(why)) => {
            v.0.push(Violation { theorem: "induced primes exhaust the spectrum".into(), witness: why });
            false
        }
        Err(e) => return Err(e),
    };

    let completeness = completeness_report(&a, &facts, condition_star);
    v.check(completeness.equivalence_ok, "completeness equivalence", || {
        format!(
            "complete {}, (a)-(d) {}, Z² = 0 {} under {:?}",
            completeness.graph_complete, completeness.props_abcd_all, completeness.z_squared_zero, completeness.hypotheses
        )
    });
    v.check(completeness.chain_ok, "(a)-(d) => Z² = 0 => complete", || spec.describe());
    if let Some(d) = oracle {
        v.check((d == 1) == (gamma.is_complete() && gamma.vertex_count() >= 2), "diameter 1 iff complete", || {
            spec.describe()
        });
    }
    if completeness.exempt {
        notes.push("completeness hypotheses fail; equivalence is report-only".to_string());
    }

    let regular_ideal_rule = match regular_ideal_rule(spec) {
        Ok(s) => s.to_string(),
        Err(ZdaError::TheoremViolation { theorem, witness }) => {
            v.0.push(Violation { theorem: theorem.clone(), witness });
            "violated".to_string()
        }
        Err(e) => return Err(e),
    };

    if facts.contraction_is_zero {
        notes.push("f⁻¹(J) = 0, so the amalgamation is isomorphic to f(R) + J".to_string());
    }
    if predicted == Some(2) && facts.j_meets_nil_s_trivially && facts.num_primes_s_avoiding_j == 1 {
        notes.push("primes of S not containing J are counted; every prime of a finite ring is minimal".to_string());
    }

    Ok(ClassificationReport {
        schema_version: SCHEMA_VERSION,
        spec: spec.describe(),
        ring: ring.label().to_string(),
        carrier_size: ring.size(),
        vertex_count: gamma.vertex_count(),
        edge_count: gamma.edge_count(),
        condition_star,
        props_abcd: facts.props.as_array(),
        z_of_r_is_ideal: facts.z_of_r_is_ideal,
        j_in_nil_s: facts.j_in_nil_s,
        j_meets_nil_s_trivially: facts.j_meets_nil_s_trivially,
        num_primes_s_avoiding_j: facts.num_primes_s_avoiding_j,
        r_is_domain: facts.r_is_domain,
        r_is_field: facts.r_is_field,
        j_bullet_size: facts.j_bullet_size,
        j_squared_zero: facts.j_squared_zero,
        amalgam_is_z2xz2: facts.amalgam_is_z2xz2,
        predicted_diameter: predicted.unwrap_or(u32::MAX),
        oracle_diameter: oracle.unwrap_or(u32::MAX),
        graph_complete: completeness.graph_complete,
        completeness_equivalence_ok: completeness.equivalence_ok,
        completeness_exempt: completeness.exempt,
        completeness,
        agreement,
        applied_rules,
        z_ideal_lemma_ok,
        spectrum_ok,
        regular_ideal_rule,
        notes,
        violations: v.0,
    })
}

/// `Z(R)` an ideal forces `diam Γ(R) <= 2`, and `Γ(R)` is connected with
/// diameter at most 3.
fn check_base_lemma(r: &FiniteRing, v: &mut Collector) -> Result<()> {
    match build_gamma(r).diameter() {
        Ok(d) => {
            if r.zero_divisors_form_ideal() {
                v.check(d.value().unwrap_or(0) <= 2, "Z(R) an ideal implies diameter at most 2", || {
                    format!("diam Γ({}) = {d}", r.label())
                });
            }
            Ok(())
        }
        Err(ZdaError::TheoremViolation { theorem, witness }) => {
            v.0.push(Violation { theorem, witness });
            Ok(())
        }
        Err(e) => Err(e),
    }
}

/// [`cross_check`] plus a comparison with a ring the amalgamation is known to
/// be isomorphic to (an idealization, `Z_m × Z_n`, `R[x]/(x^n)`, ...).
pub fn cross_check_realized(spec: &AmalgamSpec, realization: &FiniteRing) -> Result<ClassificationReport> {
    let mut report = cross_check(spec)?;
    let gamma = build_gamma(realization);
    let direct = match gamma.diameter() {
        Ok(d) => d.value(),
        Err(ZdaError::TheoremViolation { theorem, witness }) => {
            report.violations.push(Violation { theorem, witness });
            None
        }
        Err(e) => return Err(e),
    };
    if realization.size() != report.carrier_size
        || gamma.vertex_count() != report.vertex_count
        || gamma.edge_count() != report.edge_count
        || direct != Some(report.oracle_diameter)
    {
        report.violations.push(Violation {
            theorem: "amalgamation matches its realization".into(),
            witness: format!(
                "{}: {} elements, {} vertices, {} edges, diameter {direct:?}; amalgam: {}, {}, {}, {}",
                realization.label(),
                realization.size(),
                gamma.vertex_count(),
                gamma.edge_count(),
                report.carrier_size,
                report.vertex_count,
                report.edge_count,
                report.oracle_diameter
            ),
        });
    }
    report.notes.push(format!("realized directly as {}", realization.label()));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{duplication, idealization, ModuleData};
    use crate::hom::{hom_from_rules, natural_hom};
    use crate::ideal::{ideal_generated, nonzero_proper_ideals, Ideal};
    use crate::ring::{direct_product, make_zn, poly_quotient_ix};

    fn z(n: u64) -> FiniteRing {
        make_zn(n).unwrap()
    }

    fn gen(ring: &FiniteRing, names: &[&str]) -> Ideal {
        let elems: Vec<_> = names.iter().map(|n| ring.find(n).unwrap()).collect();
        ideal_generated(ring, &elems).unwrap()
    }

    fn natural(r: &FiniteRing, s: &FiniteRing, j: &[&str]) -> AmalgamSpec {
        AmalgamSpec::new(r, s, &natural_hom(r, s).unwrap(), &gen(s, j)).unwrap()
    }

    fn dup(n: u64, g: &str) -> AmalgamSpec {
        let r = z(n);
        duplication(&r, &gen(&r, &[g])).unwrap().spec().clone()
    }

    fn ideal_spec(n: u64, m: u64) -> AmalgamSpec {
        let (r, t) = (z(n), z(m));
        idealization(&r, &ModuleData::from_hom(&natural_hom(&r, &t).unwrap()).unwrap()).unwrap().spec
    }

    fn consistent(spec: &AmalgamSpec) -> ClassificationReport {
        let report = cross_check(spec).unwrap();
        assert!(report.is_consistent(), "{:#?}", report.violations);
        report
    }

    #[test]
    fn predictions_for_small_examples() {
        let z2 = z(2);
        let s = poly_quotient_ix(&z2, &[0, 0, 0, 1], "x").unwrap();
        assert_eq!(predict_diameter(&natural(&z2, &s, &["x^2"])).unwrap().diameter, 0);
        assert_eq!(predict_diameter(&dup(9, "3")).unwrap().diameter, 1);
        assert_eq!(predict_diameter(&dup(8, "4")).unwrap().diameter, 2);
        assert_eq!(predict_diameter(&dup(6, "3")).unwrap().diameter, 3);
    }

    #[test]
    fn reports_for_idealizations() {
        for (n, m, d) in [(6, 6, 3), (8, 2, 2), (9, 9, 2)] {
            let r = consistent(&ideal_spec(n, m));
            assert_eq!((r.predicted_diameter, r.oracle_diameter), (d, d));
            assert!(r.agreement);
        }
    }

    #[test]
    fn completeness_examples() {
        let r = consistent(&dup(9, "3"));
        assert!(r.completeness.graph_complete && r.completeness.props_abcd_all && r.completeness.z_squared_zero);
        let r = consistent(&dup(6, "3"));
        assert!(!r.completeness.graph_complete && !r.completeness.props_abcd_all && !r.completeness.z_squared_zero);

        let z2 = z(2);
        let b = direct_product(&z2, &z2).unwrap();
        let r = consistent(&natural(&z2, &b, &["(0, 1)"]));
        assert!(r.completeness_exempt && r.completeness_equivalence_ok);
        assert!(r.graph_complete && !r.props_abcd[3]);
        assert!(r.amalgam_is_z2xz2);
        assert_eq!(r.oracle_diameter, 1);
    }

    #[test]
    fn diameter_two_rules() {
        let z4 = z(4);
        let s = poly_quotient_ix(&z4, &[0, 0, 0, 1], "x").unwrap();
        let spec = natural(&z4, &s, &["x"]);
        let facts = SpecFacts::evaluate(&spec).unwrap();
        assert_eq!(diam2_rules(&facts), vec![DIAM2_AB_NOT_C]);
        assert_eq!(consistent(&spec).oracle_diameter, 2);

        // finite analogue with R = Z2[x]/(x^6), S = Z2[x]/(x^2), J = (x)
        let z2 = z(2);
        let r = poly_quotient_ix(&z2, &[0, 0, 0, 0, 0, 0, 1], "x").unwrap();
        let s = poly_quotient_ix(&z2, &[0, 0, 1], "x").unwrap();
        let spec = natural(&r, &s, &["x"]);
        let facts = SpecFacts::evaluate(&spec).unwrap();
        assert_eq!(diam2_rules(&facts), vec![DIAM2_BC_NOT_A]);
        assert_eq!(consistent(&spec).oracle_diameter, 2);

        assert!(diam2_rules(&SpecFacts::evaluate(&dup(6, "3")).unwrap()).is_empty());
    }

    #[test]
    fn diameter_three_shortcuts() {
        let (z12, z6) = (z(12), z(6));
        let p = direct_product(&z6, &z6).unwrap();
        let f = natural_hom(&z12, &p).unwrap();
        for j in nonzero_proper_ideals(&p).unwrap() {
            let spec = AmalgamSpec::new(&z12, &p, &f, &j).unwrap();
            let facts = SpecFacts::evaluate(&spec).unwrap();
            assert!(diam3_shortcuts(&facts).contains(&DIAM3_Z_NOT_IDEAL));
            assert_eq!(consistent(&spec).oracle_diameter, 3);
        }

        let z4 = z(4);
        let r = poly_quotient_ix(&z4, &[0, 0, 1], "x").unwrap();
        let s = direct_product(&z4, &z4).unwrap();
        let x = r.find("x").unwrap();
        let f = hom_from_rules(&r, &s, &[(x, s.zero())]).unwrap();
        let spec = AmalgamSpec::new(&r, &s, &f, &gen(&s, &["(0, 1)"])).unwrap();
        let facts = SpecFacts::evaluate(&spec).unwrap();
        assert_eq!(diam3_shortcuts(&facts), vec![DIAM3_NIL_MEETS]);
        assert_eq!(consistent(&spec).oracle_diameter, 3);

        assert!(diam3_shortcuts(&SpecFacts::evaluate(&dup(9, "3")).unwrap()).is_empty());
    }

    #[test]
    fn z_ideal_lemma_examples() {
        let z8 = z(8);
        let a = duplication(&z8, &gen(&z8, &["4"])).unwrap();
        assert!(a.ring().zero_divisors_form_ideal() && z_ideal_lemma_check(&a));
        let z6 = z(6);
        let a = duplication(&z6, &gen(&z6, &["3"])).unwrap();
        assert!(!a.ring().zero_divisors_form_ideal() && z_ideal_lemma_check(&a));
        let a = amalgamation(&ideal_spec(9, 9)).unwrap();
        assert!(a.ring().zero_divisors_form_ideal() && z_ideal_lemma_check(&a));
    }

    #[test]
    fn regular_ideal_rule_is_vacuous() {
        for spec in [dup(6, "3"), dup(9, "3"), ideal_spec(8, 2)] {
            assert_eq!(regular_ideal_rule(&spec).unwrap(), REGULAR_IDEAL_UNSATISFIABLE);
        }
    }

    #[test]
    fn report_serialises_with_schema_version() {
        let json = consistent(&dup(6, "3")).to_json();
        assert_eq!(json["schema_version"], 1);
        assert_eq!(json["predicted_diameter"], 3);
        assert_eq!(json["props_abcd"], serde_json::json!([false, true, false, false]));
        for key in ["z_of_r_is_ideal", "j_in_nil_s", "num_primes_s_avoiding_j", "amalgam_is_z2xz2", "agreement"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }
}
