//! Scenario files: a small `key = value` language describing one
//! amalgamation, duplication, idealization or n-trivial extension.
//!
//! ```text
//! R = Z4
//! S = Z4[x]/(x^3)
//! f = natural
//! J = gen(x)
//! construction = amalgamation
//! ```
//!
//! Rings are `Z<n>`, products `A*B` (left-associative) and quotients
//! `A[x]/(monic)`. Elements are integers, polynomials in the quotient's
//! variable, or tuples for products. `#` starts a comment.

mod parse;

use std::collections::BTreeMap;
use std::fmt;

use crate::classify::{cross_check, cross_check_realized, ClassificationReport};
use crate::construct::{
    amalgamation, idealization, n_trivial_extension, AmalgamRing, AmalgamSpec, ModuleData, TrivialExtSpec,
};
use crate::error::{Result, ZdaError};
use crate::hom::{hom_from_rules, identity_hom, natural_hom, RingHom};
use crate::ideal::{ideal_generated, Ideal};
use crate::ring::{direct_product, make_zn, poly_quotient_ix, Element, ElementSet, FiniteRing, Shape};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    R,
    S,
    M,
    F,
    J,
    Action,
    Products,
    Construction,
}

impl Key {
    pub const ALL: [Key; 8] =
        [Key::R, Key::S, Key::M, Key::F, Key::J, Key::Action, Key::Products, Key::Construction];

    pub fn name(self) -> &'static str {
        match self {
            Key::R => "R",
            Key::S => "S",
            Key::M => "M",
            Key::F => "f",
            Key::J => "J",
            Key::Action => "action",
            Key::Products => "products",
            Key::Construction => "construction",
        }
    }

    fn from_name(s: &str) -> Option<Key> {
        Key::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// Integer polynomial in at most one variable, as written.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    pub var: Option<String>,
    /// exponent -> coefficient, zero coefficients dropped
    pub terms: BTreeMap<u32, i64>,
}

impl Poly {
    pub fn constant(c: i64) -> Poly {
        let mut p = Poly::default();
        p.add_term(0, c);
        p.normalize();
        p
    }

    fn add_term(&mut self, exp: u32, c: i64) {
        *self.terms.entry(exp).or_insert(0) += c;
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| *c != 0);
        if self.terms.keys().all(|&e| e == 0) {
            self.var = None;
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&0).copied(),
            _ => None,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let var = self.var.as_deref().unwrap_or("x");
        for (k, (&e, &c)) in self.terms.iter().rev().enumerate() {
            let mag = c.unsigned_abs();
            if c < 0 {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    f.write_str(var)?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    Zn(u64),
    Product(Box<RingExpr>, Box<RingExpr>),
    Quotient { base: Box<RingExpr>, var: String, modulus: Poly },
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zn(n) => write!(f, "Z{n}"),
            RingExpr::Product(a, b) => match **b {
                RingExpr::Product(..) => write!(f, "{a}*({b})"),
                _ => write!(f, "{a}*{b}"),
            },
            RingExpr::Quotient { base, var, modulus } => match **base {
                RingExpr::Product(..) => write!(f, "({base})[{var}]/({modulus})"),
                _ => write!(f, "{base}[{var}]/({modulus})"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementExpr {
    Poly(Poly),
    Tuple(Vec<ElementExpr>),
}

impl fmt::Display for ElementExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementExpr::Poly(p) => write!(f, "{p}"),
            ElementExpr::Tuple(parts) => write!(f, "({})", join(parts)),
        }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealExpr {
    Gen(Vec<ElementExpr>),
    Set(Vec<ElementExpr>),
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealExpr::Gen(g) => write!(f, "gen({})", join(g)),
            IdealExpr::Set(s) => write!(f, "{{{}}}", join(s)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomExpr {
    Identity,
    Natural,
    Map(Vec<(ElementExpr, ElementExpr)>),
}

impl fmt::Display for HomExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomExpr::Identity => f.write_str("identity"),
            HomExpr::Natural => f.write_str("natural"),
            HomExpr::Map(rules) => {
                let parts: Vec<String> = rules.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
                write!(f, "map {{ {} }}", parts.join(", "))
            }
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ConstructionExpr {
    Amalgamation,
    Duplication,
    Idealization,
    TrivialExt(usize),
}

impl fmt::Display for ConstructionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionExpr::Amalgamation => f.write_str("amalgamation"),
            ConstructionExpr::Duplication => f.write_str("duplication"),
            ConstructionExpr::Idealization => f.write_str("idealization"),
            ConstructionExpr::TrivialExt(n) => write!(f, "trivial_ext {n}"),
        }
    }
}

/// How `R` acts on the module `M`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ActionExpr {
    /// Through the natural homomorphism `R -> M`.
    Natural,
    /// Through the `k`-th factor of a product `R` (1-based), then naturally.
    Project(usize),
}

impl fmt::Display for ActionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionExpr::Natural => f.write_str("natural"),
            ActionExpr::Project(k) => write!(f, "project({k})"),
        }
    }
}

/// The graded products `M_i x M_j -> M_{i+j}` of an n-trivial extension.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ProductsExpr {
    Ring,
    Zero,
}

impl fmt::Display for ProductsExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductsExpr::Ring => "ring",
            ProductsExpr::Zero => "zero",
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct Scenario {
    pub r: Option<RingExpr>,
    pub s: Option<RingExpr>,
    pub m: Option<RingExpr>,
    pub f: Option<HomExpr>,
    pub j: Option<IdealExpr>,
    pub action: Option<ActionExpr>,
    pub products: Option<ProductsExpr>,
    pub construction: Option<ConstructionExpr>,
    /// Source position of each key, for semantic errors.
    pub spans: BTreeMap<Key, (usize, usize)>,
}

impl PartialEq for Scenario {
    fn eq(&self, o: &Self) -> bool {
        self.r == o.r
            && self.s == o.s
            && self.m == o.m
            && self.f == o.f
            && self.j == o.j
            && self.action == o.action
            && self.products == o.products
            && self.construction == o.construction
    }
}

impl Eq for Scenario {}

/// One `key = value` per line in a fixed key order.
impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut line = |k: Key, v: Option<String>| match v {
            Some(v) => writeln!(f, "{} = {v}", k.name()),
            None => Ok(()),
        };
        line(Key::R, self.r.as_ref().map(ToString::to_string))?;
        line(Key::S, self.s.as_ref().map(ToString::to_string))?;
        line(Key::M, self.m.as_ref().map(ToString::to_string))?;
        line(Key::F, self.f.as_ref().map(ToString::to_string))?;
        line(Key::J, self.j.as_ref().map(ToString::to_string))?;
        line(Key::Action, self.action.map(|a| a.to_string()))?;
        line(Key::Products, self.products.map(|p| p.to_string()))?;
        line(Key::Construction, self.construction.map(|c| c.to_string()))
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    parse::parse(text)
}

/// A scenario turned into rings.
#[derive(Clone, Debug)]
pub struct Instance {
    pub construction: ConstructionExpr,
    pub spec: AmalgamSpec,
    /// The ring built directly for idealizations and n-trivial extensions.
    pub realization: Option<FiniteRing>,
    pub notes: Vec<String>,
}

impl Instance {
    pub fn amalgam(&self) -> Result<AmalgamRing> {
        amalgamation(&self.spec)
    }

    /// The ring the scenario describes: the direct realization if there is
    /// one, otherwise the pair-carrier amalgamation.
    pub fn ring(&self) -> Result<FiniteRing> {
        match &self.realization {
            Some(r) => Ok(r.clone()),
            None => Ok(self.amalgam()?.ring().clone()),
        }
    }

    /// [`cross_check`], compared against the direct realization when there is
    /// one. Resolution notes are carried into the report.
    pub fn cross_check(&self) -> Result<ClassificationReport> {
        let mut report = match &self.realization {
            Some(r) => cross_check_realized(&self.spec, r)?,
            None => cross_check(&self.spec)?,
        };
        report.notes.extend(self.notes.iter().cloned());
        Ok(report)
    }
}

impl Scenario {
    fn pos(&self, k: Key) -> (usize, usize) {
        self.spans.get(&k).copied().unwrap_or((0, 0))
    }

    fn semantic(&self, k: Key, msg: impl Into<String>) -> ZdaError {
        let (line, col) = self.pos(k);
        ZdaError::Semantic { line, col, msg: msg.into() }
    }

    /// Re-tag core errors with the position of the key that caused them.
    fn at(&self, k: Key) -> impl Fn(ZdaError) -> ZdaError + '_ {
        move |e| match e {
            ZdaError::CarrierTooLarge { .. } | ZdaError::ResourceBound(_) | ZdaError::Semantic { .. } => e,
            other => self.semantic(k, format!("{}: {other}", k.name())),
        }
    }

    fn forbid(&self, keys: &[Key], construction: ConstructionExpr) -> Result<()> {
        for &k in keys {
            if self.spans.contains_key(&k) {
                return Err(self.semantic(k, format!("key {} does not apply to {construction}", k.name())));
            }
        }
        Ok(())
    }

    pub fn resolve(&self) -> Result<Instance> {
        let construction = self.construction.unwrap_or(ConstructionExpr::Amalgamation);
        let r_expr = self.r.as_ref().ok_or_else(|| self.semantic(Key::R, "missing key R"))?;
        let r = build_ring(r_expr).map_err(self.at(Key::R))?;
        let mut notes = Vec::new();
        match construction {
            ConstructionExpr::Amalgamation | ConstructionExpr::Duplication => {
                self.forbid(&[Key::M, Key::Action, Key::Products], construction)?;
                let s = match &self.s {
                    Some(e) if construction == ConstructionExpr::Amalgamation || e != r_expr => {
                        if construction == ConstructionExpr::Duplication {
                            return Err(self.semantic(Key::S, "a duplication has S = R"));
                        }
                        build_ring(e).map_err(self.at(Key::S))?
                    }
                    _ => r.clone(),
                };
                let hom = match (&self.f, construction) {
                    (None | Some(HomExpr::Identity), ConstructionExpr::Duplication) => identity_hom(&r),
                    (Some(_), ConstructionExpr::Duplication) => {
                        return Err(self.semantic(Key::F, "a duplication uses the identity"))
                    }
                    (None, _) if s == r => identity_hom(&r),
                    (None | Some(HomExpr::Natural), _) => natural_hom(&r, &s).map_err(self.at(Key::F))?,
                    (Some(HomExpr::Identity), _) if s == r => identity_hom(&r),
                    (Some(HomExpr::Identity), _) => {
                        return Err(self.semantic(Key::F, "identity needs S = R"));
                    }
                    (Some(HomExpr::Map(rules)), _) => {
                        let pairs = rules
                            .iter()
                            .map(|(a, b)| Ok((element(&r, a)?, element(&s, b)?)))
                            .collect::<Result<Vec<_>>>()
                            .map_err(self.at(Key::F))?;
                        hom_from_rules(&r, &s, &pairs).map_err(self.at(Key::F))?
                    }
                };
                let j_expr = self.j.as_ref().ok_or_else(|| self.semantic(Key::J, "missing key J"))?;
                let j = build_ideal(&s, j_expr).map_err(self.at(Key::J))?;
                let spec = AmalgamSpec::new(&r, &s, &hom, &j).map_err(self.at(Key::J))?;
                Ok(Instance { construction, spec, realization: None, notes })
            }
            ConstructionExpr::Idealization | ConstructionExpr::TrivialExt(_) => {
                self.forbid(&[Key::S, Key::F, Key::J], construction)?;
                let m_expr = self.m.as_ref().ok_or_else(|| self.semantic(Key::M, "missing key M"))?;
                let m = build_ring(m_expr).map_err(self.at(Key::M))?;
                let action = self.action.unwrap_or(ActionExpr::Natural);
                let g = action_hom(&r, &m, action).map_err(self.at(Key::Action))?;
                if let ActionExpr::Project(k) = action {
                    notes.push(format!("{} acts on {} through factor {k}", r.label(), m.label()));
                }
                let ext = match construction {
                    ConstructionExpr::Idealization => {
                        self.forbid(&[Key::Products], construction)?;
                        let module = ModuleData::from_hom(&g).map_err(self.at(Key::Action))?;
                        idealization(&r, &module).map_err(self.at(Key::M))?
                    }
                    ConstructionExpr::TrivialExt(n) => {
                        let ring_products = self.products == Some(ProductsExpr::Ring);
                        let tspec = TrivialExtSpec::uniform(&g, n, ring_products)
                            .map_err(self.at(Key::Construction))?;
                        n_trivial_extension(&tspec).map_err(self.at(Key::Construction))?
                    }
                    _ => unreachable!(),
                };
                Ok(Instance { construction, spec: ext.spec, realization: Some(ext.ring), notes })
            }
        }
    }
}

pub fn build_ring(expr: &RingExpr) -> Result<FiniteRing> {
    match expr {
        RingExpr::Zn(n) => make_zn(*n),
        RingExpr::Product(a, b) => direct_product(&build_ring(a)?, &build_ring(b)?),
        RingExpr::Quotient { base, var, modulus } => {
            if matches!(**base, RingExpr::Quotient { .. }) {
                return Err(ZdaError::InvalidParameter("nested polynomial quotients are not supported".into()));
            }
            let base = build_ring(base)?;
            if modulus.terms.get(&modulus.degree()) != Some(&1) || modulus.degree() == 0 {
                return Err(ZdaError::InvalidParameter(format!("modulus {modulus} is not monic of degree >= 1")));
            }
            let coeffs: Vec<usize> = (0..=modulus.degree())
                .map(|e| base.from_int_ix(modulus.terms.get(&e).copied().unwrap_or(0)))
                .collect();
            poly_quotient_ix(&base, &coeffs, var)
        }
    }
}

/// Resolve an element expression in `ring`; integers must lie in the
/// carrier of the underlying `Z_n`.
pub fn element(ring: &FiniteRing, e: &ElementExpr) -> Result<Element> {
    element_ix(ring, e).map(|h| ring.element(h).expect("handle in range"))
}

fn element_ix(ring: &FiniteRing, e: &ElementExpr) -> Result<usize> {
    let bad = |msg: String| ZdaError::InvalidParameter(msg);
    match (ring.shape(), e) {
        (Shape::Integers(n), ElementExpr::Poly(p)) => match p.as_constant() {
            Some(c) if c >= 0 && (c as u64) < *n => Ok(c as usize),
            Some(c) => Err(bad(format!("{c} is not an element of {}", ring.label()))),
            None => Err(bad(format!("{p} is not an element of {}", ring.label()))),
        },
        (Shape::PolyQuotient(ps), ElementExpr::Poly(p)) => {
            if let Some(v) = p.var.as_ref().filter(|v| **v != ps.var) {
                return Err(bad(format!("{} uses the variable {}, not {v}", ring.label(), ps.var)));
            }
            if p.degree() as usize >= ps.degree() && !p.terms.is_empty() {
                return Err(bad(format!("{p} has degree at least that of the modulus of {}", ring.label())));
            }
            let coeffs = (0..ps.degree())
                .map(|k| {
                    let c = p.terms.get(&(k as u32)).copied().unwrap_or(0);
                    element_ix(&ps.base, &ElementExpr::Poly(Poly::constant(c)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ps.handle_of(&coeffs))
        }
        (Shape::Product(a, b), ElementExpr::Tuple(parts)) => {
            let (head, last) = parts.split_at(parts.len() - 1);
            let left = match head {
                [one] => element_ix(a, one)?,
                _ if matches!(a.shape(), Shape::Product(..)) => element_ix(a, &ElementExpr::Tuple(head.to_vec()))?,
                _ => return Err(bad(format!("{e} has too many components for {}", ring.label()))),
            };
            Ok(left * b.size() + element_ix(b, &last[0])?)
        }
        (Shape::Product(..), ElementExpr::Poly(_)) => {
            Err(bad(format!("{e} is not a tuple, but {} is a product", ring.label())))
        }
        _ => Err(bad(format!("{e} is not an element of {}", ring.label()))),
    }
}

fn build_ideal(ring: &FiniteRing, expr: &IdealExpr) -> Result<Ideal> {
    match expr {
        IdealExpr::Gen(gens) => {
            let elems = gens.iter().map(|g| element(ring, g)).collect::<Result<Vec<_>>>()?;
            ideal_generated(ring, &elems)
        }
        IdealExpr::Set(items) => {
            let elems = items.iter().map(|g| element(ring, g)).collect::<Result<Vec<_>>>()?;
            Ideal::from_set(ring, ElementSet::from_elements(ring, &elems)?)
        }
    }
}

/// Factors of a left-nested product, outermost right factor last.
fn factors(ring: &FiniteRing) -> Vec<FiniteRing> {
    match ring.shape() {
        Shape::Product(a, b) => {
            let mut out = factors(a);
            out.push(b.clone());
            out
        }
        _ => vec![ring.clone()],
    }
}

/// Component handles of `h` matching [`factors`].
fn components(ring: &FiniteRing, h: usize) -> Vec<usize> {
    match ring.shape() {
        Shape::Product(a, b) => {
            let mut out = components(a, h / b.size());
            out.push(h % b.size());
            out
        }
        _ => vec![h],
    }
}

fn action_hom(r: &FiniteRing, m: &FiniteRing, action: ActionExpr) -> Result<RingHom> {
    match action {
        ActionExpr::Natural => natural_hom(r, m),
        ActionExpr::Project(k) => {
            let fs = factors(r);
            if k == 0 || k > fs.len() || fs.len() < 2 {
                return Err(ZdaError::InvalidParameter(format!(
                    "project({k}) needs a product with at least {k} factors, got {}",
                    r.label()
                )));
            }
            let to_m = natural_hom(&fs[k - 1], m)?;
            let map = (0..r.size()).map(|h| to_m.apply_ix(components(r, h)[k - 1])).collect();
            RingHom::from_handles(r, m, map)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(text: &str) -> Result<Instance> {
        parse_scenario(text)?.resolve()
    }

    #[test]
    fn duplication_scenario() {
        let inst = resolve("R=Z6\nS=Z6\nf=identity\nJ=gen(3)\nconstruction=duplication").unwrap();
        assert_eq!(inst.spec.ideal().members().handles().collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(inst.amalgam().unwrap().ring().size(), 12);
    }

    #[test]
    fn polynomial_scenario() {
        let inst = resolve("R=Z4\nS=Z4[x]/(x^3)\nf=natural\nJ=gen(x)\nconstruction=amalgamation").unwrap();
        assert_eq!(inst.spec.host().size(), 64);
        assert_eq!(inst.spec.ideal().len(), 16);
    }

    #[test]
    fn out_of_range_integer_is_semantic() {
        let err = resolve("R=Z6\nJ=gen(7)").unwrap_err();
        assert!(matches!(err, ZdaError::Semantic { line: 2, col: 1, .. }), "{err}");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_scenario("R = Z6\nJ = gen(3\n").unwrap_err();
        assert!(matches!(err, ZdaError::Syntax { line: 3, .. }), "{err}");
        let err = parse_scenario("R = Z6 $").unwrap_err();
        assert!(matches!(err, ZdaError::Syntax { line: 1, col: 8, .. }), "{err}");
        let err = parse_scenario("R = Z4[x]/(x^2+y)").unwrap_err();
        assert!(matches!(err, ZdaError::Syntax { .. }), "{err}");
    }

    #[test]
    fn key_errors() {
        assert!(matches!(parse_scenario("R=Z6\nR=Z4"), Err(ZdaError::Semantic { line: 2, .. })));
        assert!(matches!(parse_scenario("Q=Z6"), Err(ZdaError::Semantic { line: 1, .. })));
        assert!(matches!(resolve("J=gen(1)"), Err(ZdaError::Semantic { .. })));
    }

    #[test]
    fn non_monic_and_non_ideal_are_semantic() {
        assert!(matches!(resolve("R=Z4\nS=Z4[x]/(2x^2)\nJ=gen(x)"), Err(ZdaError::Semantic { .. })));
        assert!(matches!(resolve("R=Z6\nJ={0, 2}"), Err(ZdaError::Semantic { .. })));
        assert!(matches!(resolve("R=Z6\nS=Z4\nJ=gen(2)"), Err(ZdaError::Semantic { .. })));
    }

    #[test]
    fn elements_of_products_and_quotients() {
        let r = build_ring(&parse_scenario("R = Z2*Z2[x]/(x^2)").unwrap().r.unwrap()).unwrap();
        let e = element(&r, &ElementExpr::Tuple(vec![ElementExpr::Poly(Poly::constant(0)), x_poly()])).unwrap();
        assert_eq!(r.name(e).unwrap(), "(0, x)");
        let r3 = build_ring(&parse_scenario("R = Z2*Z3*Z5").unwrap().r.unwrap()).unwrap();
        let flat = parse_scenario("J = {(1, 2, 3)}").unwrap();
        let IdealExpr::Set(items) = flat.j.unwrap() else { panic!() };
        assert_eq!(r3.name(element(&r3, &items[0]).unwrap()).unwrap(), "((1, 2), 3)");
    }

    fn x_poly() -> ElementExpr {
        let mut p = Poly { var: Some("x".into()), ..Poly::default() };
        p.add_term(1, 1);
        ElementExpr::Poly(p)
    }

    #[test]
    fn idealization_scenarios() {
        let inst = resolve("R=Z6*Z6\nM=Z6\naction=project(1)\nconstruction=idealization").unwrap();
        assert_eq!(inst.realization.as_ref().unwrap().size(), 216);
        assert_eq!(inst.amalgam().unwrap().ring().size(), 216);
        let inst = resolve("R=Z2\nM=Z2\nproducts=ring\nconstruction=trivial_ext 2").unwrap();
        assert_eq!(inst.realization.unwrap().size(), 8);
        assert!(resolve("R=Z6\nM=Z6\nJ=gen(2)\nconstruction=idealization").is_err());
    }

    #[test]
    fn map_hom_scenario() {
        let inst =
            resolve("R = Z4[x]/(x^2)\nS = Z4*Z4\nf = map { x -> (0, 0) }\nJ = gen((0, 1))").unwrap();
        let f = inst.spec.hom();
        let r = inst.spec.base();
        let e = element(r, &parse_elem("3+2x")).unwrap();
        assert_eq!(f.target().name_ix(f.apply_ix(e.handle())), "(3, 3)");
    }

    fn parse_elem(s: &str) -> ElementExpr {
        let sc = parse_scenario(&format!("J = {{{s}}}")).unwrap();
        let Some(IdealExpr::Set(mut v)) = sc.j else { panic!() };
        v.remove(0)
    }

    #[test]
    fn display_round_trips() {
        let text = "# comment\nR = (Z2*Z2)[y]/(y^2 - 1) ; S=Z2*(Z2*Z2)\nf = map{ 1 -> (1,(1,1)) }\nJ = {0, 2y, -3}\nconstruction = trivial_ext(3)";
        let sc = parse_scenario(text).unwrap();
        let shown = sc.to_string();
        assert_eq!(parse_scenario(&shown).unwrap(), sc, "{shown}");
        assert!(shown.contains("R = (Z2*Z2)[y]/(y^2-1)"), "{shown}");
        assert!(shown.contains("construction = trivial_ext 3"), "{shown}");
    }
}
