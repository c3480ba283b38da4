//! Finite commutative rings with identity, stored as dense operation tables.
//!
//! Every ring is a carrier of `n` opaque handles `0..n` together with full
//! addition and multiplication tables. Constructors for the standard families
//! (`Z_n`, direct products, polynomial quotients) record a [`Shape`] that fixes
//! the handle layout, which is what the natural-homomorphism resolver relies on.

use std::fmt;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Result, ZdaError};
use crate::spectrum::SpectrumData;

/// Default bound on carrier size; tables are quadratic in it.
pub const DEFAULT_MAX_CARRIER: usize = 4096;

/// Rings up to this size get an exhaustive triple check of the axioms.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 64;

const SAMPLED_TRIPLES: usize = 20_000;
const AXIOM_SEED: u64 = 0x2a6d_0f1e_5eed;

static MAX_CARRIER: AtomicUsize = AtomicUsize::new(0);
static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// Current carrier bound. Read from `ZDA_MAX_CARRIER` on first use unless
/// [`set_max_carrier`] was called.
pub fn max_carrier() -> usize {
    let v = MAX_CARRIER.load(Ordering::Relaxed);
    if v != 0 {
        return v;
    }
    let bound = std::env::var("ZDA_MAX_CARRIER")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n >= 2)
        .unwrap_or(DEFAULT_MAX_CARRIER);
    let _ = MAX_CARRIER.compare_exchange(0, bound, Ordering::Relaxed, Ordering::Relaxed);
    MAX_CARRIER.load(Ordering::Relaxed)
}

pub fn set_max_carrier(bound: usize) {
    MAX_CARRIER.store(bound.max(2), Ordering::Relaxed);
}

pub(crate) fn check_size(size: usize) -> Result<()> {
    let bound = max_carrier();
    if size > bound {
        return Err(ZdaError::CarrierTooLarge { size, bound });
    }
    Ok(())
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RingId(u64);

impl RingId {
    fn fresh() -> Self {
        RingId(NEXT_RING_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// A handle into a specific ring's carrier.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    ring: RingId,
    handle: u32,
}

impl Element {
    pub fn handle(self) -> usize {
        self.handle as usize
    }

    pub fn ring_id(self) -> RingId {
        self.ring
    }
}

/// How a ring was built. Determines the handle layout:
/// `Integers(n)` uses the residue itself, `Product(a, b)` uses `i * |b| + j`,
/// and `PolyQuotient` stores coefficients as little-endian base-`|base|` digits.
#[derive(Clone)]
pub enum Shape {
    Integers(u64),
    Product(FiniteRing, FiniteRing),
    PolyQuotient(PolyShape),
    Other,
}

#[derive(Clone)]
pub struct PolyShape {
    pub base: FiniteRing,
    /// Coefficient handles of the monic modulus, lowest degree first.
    pub modulus: Vec<usize>,
    pub var: String,
}

impl PolyShape {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Coefficient handles (lowest degree first) of the residue stored at `handle`.
    pub fn coefficients(&self, mut handle: usize) -> Vec<usize> {
        let q = self.base.size();
        (0..self.degree())
            .map(|_| {
                let c = handle % q;
                handle /= q;
                c
            })
            .collect()
    }

    pub fn handle_of(&self, coeffs: &[usize]) -> usize {
        let q = self.base.size();
        coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }
}

struct RingData {
    id: RingId,
    label: String,
    names: Vec<String>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    one: u32,
    shape: Shape,
    units: OnceLock<ElementSet>,
    zero_divisors: OnceLock<ElementSet>,
    nilpotents: OnceLock<ElementSet>,
    spectrum: OnceLock<std::result::Result<SpectrumData, String>>,
}

/// A finite commutative ring with identity. Cheap to clone; clones share the
/// same identity.
#[derive(Clone)]
pub struct FiniteRing {
    inner: Arc<RingData>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, {} elements)", self.inner.label, self.size())
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.inner.label)
    }
}

impl FiniteRing {
    /// Build a ring from explicit tables (`add[i * n + j]`, `mul[i * n + j]`).
    /// The ring axioms are checked before the ring is returned.
    pub fn from_tables(
        label: impl Into<String>,
        names: Vec<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = names.len();
        check_size(n)?;
        if add.len() != n * n || mul.len() != n * n {
            return Err(ZdaError::InvalidParameter(format!(
                "tables must have {} entries for a carrier of {n}",
                n * n
            )));
        }
        Self::finish(label.into(), names, add, mul, zero, one, Shape::Other)
    }

    /// Build a ring from closures on handles.
    pub(crate) fn build(
        label: String,
        names: Vec<String>,
        zero: usize,
        one: usize,
        shape: Shape,
        add: impl Fn(usize, usize) -> usize + Sync,
        mul: impl Fn(usize, usize) -> usize + Sync,
    ) -> Result<Self> {
        let n = names.len();
        check_size(n)?;
        let fill = |op: &(dyn Fn(usize, usize) -> usize + Sync)| {
            let mut t = vec![0u32; n * n];
            t.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
                for (j, v) in row.iter_mut().enumerate() {
                    *v = op(i, j) as u32;
                }
            });
            t
        };
        let (add_t, mul_t) = (fill(&add), fill(&mul));
        Self::finish(label, names, add_t, mul_t, zero, one, shape)
    }

    fn finish(
        label: String,
        names: Vec<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
        shape: Shape,
    ) -> Result<Self> {
        let n = names.len();
        if n < 2 {
            return Err(ZdaError::InvalidParameter(
                "the zero ring is excluded (zero must differ from one)".into(),
            ));
        }
        if zero >= n || one >= n {
            return Err(ZdaError::InvalidParameter("zero/one handle out of range".into()));
        }
        if zero == one {
            return Err(ZdaError::InvalidParameter("zero must differ from one".into()));
        }
        if let Some(bad) = add.iter().chain(mul.iter()).find(|&&v| v as usize >= n) {
            return Err(ZdaError::InvalidParameter(format!("table entry {bad} out of range")));
        }
        let neg = negation_table(&names, &add, zero)?;
        let data = RingData {
            id: RingId::fresh(),
            label,
            names,
            add,
            mul,
            neg,
            zero: zero as u32,
            one: one as u32,
            shape,
            units: OnceLock::new(),
            zero_divisors: OnceLock::new(),
            nilpotents: OnceLock::new(),
            spectrum: OnceLock::new(),
        };
        let ring = FiniteRing { inner: Arc::new(data) };
        ring.check_axioms()?;
        Ok(ring)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.size();
        let (z, o) = (self.zero_ix(), self.one_ix());
        let w1 = |x: usize| self.name_ix(x).to_string();
        let w2 = |x: usize, y: usize| format!("({}, {})", self.name_ix(x), self.name_ix(y));
        for x in 0..n {
            if self.add_ix(z, x) != x {
                return Err(ZdaError::RingAxiom { law: "additive identity", witness: w1(x) });
            }
            if self.mul_ix(o, x) != x {
                return Err(ZdaError::RingAxiom { law: "multiplicative identity", witness: w1(x) });
            }
            for y in x + 1..n {
                if self.add_ix(x, y) != self.add_ix(y, x) {
                    return Err(ZdaError::RingAxiom { law: "additive commutativity", witness: w2(x, y) });
                }
                if self.mul_ix(x, y) != self.mul_ix(y, x) {
                    return Err(ZdaError::RingAxiom {
                        law: "multiplicative commutativity",
                        witness: w2(x, y),
                    });
                }
            }
        }
        if n <= EXHAUSTIVE_AXIOM_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    for w in 0..n {
                        self.check_triple(x, y, w)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SEED);
            for _ in 0..SAMPLED_TRIPLES {
                let (x, y, w) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                self.check_triple(x, y, w)?;
            }
        }
        Ok(())
    }

    fn check_triple(&self, x: usize, y: usize, w: usize) -> Result<()> {
        let witness = || {
            format!("({}, {}, {})", self.name_ix(x), self.name_ix(y), self.name_ix(w))
        };
        if self.add_ix(self.add_ix(x, y), w) != self.add_ix(x, self.add_ix(y, w)) {
            return Err(ZdaError::RingAxiom { law: "additive associativity", witness: witness() });
        }
        if self.mul_ix(self.mul_ix(x, y), w) != self.mul_ix(x, self.mul_ix(y, w)) {
            return Err(ZdaError::RingAxiom {
                law: "multiplicative associativity",
                witness: witness(),
            });
        }
        if self.mul_ix(x, self.add_ix(y, w)) != self.add_ix(self.mul_ix(x, y), self.mul_ix(x, w)) {
            return Err(ZdaError::RingAxiom { law: "distributivity", witness: witness() });
        }
        Ok(())
    }

    pub fn id(&self) -> RingId {
        self.inner.id
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn size(&self) -> usize {
        self.inner.names.len()
    }

    pub fn shape(&self) -> &Shape {
        &self.inner.shape
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    // Unchecked handle-level arithmetic. Handles must be `< self.size()`.

    #[inline]
    pub fn add_ix(&self, a: usize, b: usize) -> usize {
        self.inner.add[a * self.size() + b] as usize
    }

    #[inline]
    pub fn mul_ix(&self, a: usize, b: usize) -> usize {
        self.inner.mul[a * self.size() + b] as usize
    }

    #[inline]
    pub fn neg_ix(&self, a: usize) -> usize {
        self.inner.neg[a] as usize
    }

    #[inline]
    pub fn sub_ix(&self, a: usize, b: usize) -> usize {
        self.add_ix(a, self.neg_ix(b))
    }

    #[inline]
    pub fn zero_ix(&self) -> usize {
        self.inner.zero as usize
    }

    #[inline]
    pub fn one_ix(&self) -> usize {
        self.inner.one as usize
    }

    pub fn name_ix(&self, a: usize) -> &str {
        &self.inner.names[a]
    }

    /// `k * 1` for a possibly negative integer `k`.
    pub fn from_int_ix(&self, k: i64) -> usize {
        let mut acc = self.zero_ix();
        for _ in 0..k.unsigned_abs() {
            acc = self.add_ix(acc, self.one_ix());
        }
        if k < 0 {
            self.neg_ix(acc)
        } else {
            acc
        }
    }

    pub fn pow_ix(&self, a: usize, mut e: u64) -> usize {
        let mut base = a;
        let mut acc = self.one_ix();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_ix(acc, base);
            }
            base = self.mul_ix(base, base);
            e >>= 1;
        }
        acc
    }

    // Checked element-level API.

    pub fn element(&self, handle: usize) -> Result<Element> {
        if handle >= self.size() {
            return Err(ZdaError::HandleOutOfRange { handle, size: self.size() });
        }
        Ok(Element { ring: self.id(), handle: handle as u32 })
    }

    pub(crate) fn elem(&self, handle: usize) -> Element {
        debug_assert!(handle < self.size());
        Element { ring: self.id(), handle: handle as u32 }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size()).map(move |h| self.elem(h))
    }

    pub fn zero(&self) -> Element {
        self.elem(self.zero_ix())
    }

    pub fn one(&self) -> Element {
        self.elem(self.one_ix())
    }

    pub fn owns(&self, e: Element) -> Result<usize> {
        if e.ring != self.id() {
            return Err(ZdaError::CrossRing);
        }
        Ok(e.handle())
    }

    pub fn add(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.elem(self.add_ix(self.owns(a)?, self.owns(b)?)))
    }

    pub fn mul(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.elem(self.mul_ix(self.owns(a)?, self.owns(b)?)))
    }

    pub fn neg(&self, a: Element) -> Result<Element> {
        Ok(self.elem(self.neg_ix(self.owns(a)?)))
    }

    pub fn name(&self, a: Element) -> Result<&str> {
        Ok(self.name_ix(self.owns(a)?))
    }

    pub fn find(&self, name: &str) -> Option<Element> {
        self.inner.names.iter().position(|n| n == name).map(|h| self.elem(h))
    }

    // Invariants.

    pub fn units(&self) -> &ElementSet {
        self.inner.units.get_or_init(|| {
            let one = self.one_ix();
            let n = self.size();
            let mask = (0..n).map(|u| (0..n).any(|v| self.mul_ix(u, v) == one)).collect();
            ElementSet::from_mask(self, mask)
        })
    }

    /// Elements `z` with `z * w = 0` for some nonzero `w`. Contains zero.
    pub fn zero_divisors(&self) -> &ElementSet {
        self.inner.zero_divisors.get_or_init(|| {
            let (n, z) = (self.size(), self.zero_ix());
            let mask = (0..n)
                .map(|x| (0..n).any(|w| w != z && self.mul_ix(x, w) == z))
                .collect();
            ElementSet::from_mask(self, mask)
        })
    }

    /// Non-zero-divisors. In a finite ring these are exactly the units.
    pub fn regular_elements(&self) -> ElementSet {
        let reg = self.zero_divisors().complement();
        assert_eq!(
            &reg,
            self.units(),
            "regular elements differ from units in finite ring {}",
            self.label()
        );
        reg
    }

    pub fn nilpotents(&self) -> &ElementSet {
        self.inner.nilpotents.get_or_init(|| {
            // x^k = 0 for some k <= n iff x^(2^m) = 0 once 2^m >= n
            let n = self.size();
            let z = self.zero_ix();
            let mask = (0..n)
                .map(|x| {
                    let mut p = x;
                    let mut e = 1usize;
                    while e < n {
                        p = self.mul_ix(p, p);
                        e *= 2;
                    }
                    p == z
                })
                .collect();
            ElementSet::from_mask(self, mask)
        })
    }

    pub fn idempotents(&self) -> ElementSet {
        let mask = (0..self.size()).map(|e| self.mul_ix(e, e) == e).collect();
        ElementSet::from_mask(self, mask)
    }

    pub fn is_field(&self) -> bool {
        self.units().len() == self.size() - 1
    }

    pub fn is_domain(&self) -> bool {
        let domain = self.zero_divisors().len() == 1;
        assert_eq!(domain, self.is_field(), "finite domain that is not a field: {}", self.label());
        domain
    }

    pub fn is_reduced(&self) -> bool {
        self.nilpotents().len() == 1
    }

    /// A finite ring is local iff 0 and 1 are its only idempotents.
    pub fn is_local(&self) -> bool {
        self.idempotents().len() == 2
    }

    /// Order four with every element idempotent, i.e. isomorphic to `Z2 x Z2`.
    pub fn is_boolean_four(&self) -> bool {
        self.size() == 4 && self.idempotents().len() == 4
    }

    /// Whether `Z(A)` is closed under addition (it is always closed under
    /// multiplication by ring elements, so this decides whether it is an ideal).
    pub fn zero_divisors_form_ideal(&self) -> bool {
        self.zero_divisors_addition_witness().is_none()
    }

    /// A pair of zero-divisors whose sum is not a zero-divisor, if any.
    pub fn zero_divisors_addition_witness(&self) -> Option<(usize, usize)> {
        let zd = self.zero_divisors();
        let members: Vec<usize> = zd.handles().collect();
        for (k, &a) in members.iter().enumerate() {
            for &b in &members[k..] {
                if !zd.contains_handle(self.add_ix(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Whether every product of two zero-divisors vanishes.
    pub fn zero_divisors_square_to_zero(&self) -> bool {
        let z = self.zero_ix();
        let members: Vec<usize> = self.zero_divisors().handles().collect();
        members
            .iter()
            .all(|&a| members.iter().all(|&b| self.mul_ix(a, b) == z))
    }

    pub(crate) fn spectrum_cache(&self) -> &OnceLock<std::result::Result<SpectrumData, String>> {
        &self.inner.spectrum
    }
}

fn negation_table(names: &[String], add: &[u32], zero: usize) -> Result<Vec<u32>> {
    let n = names.len();
    (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| add[x * n + y] as usize == zero)
                .map(|y| y as u32)
                .ok_or_else(|| ZdaError::RingAxiom {
                    law: "additive inverse",
                    witness: names[x].clone(),
                })
        })
        .collect()
}

/// A subset of one ring's carrier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElementSet {
    ring: RingId,
    mask: Vec<bool>,
}

impl ElementSet {
    pub fn empty(ring: &FiniteRing) -> Self {
        ElementSet { ring: ring.id(), mask: vec![false; ring.size()] }
    }

    pub fn from_mask(ring: &FiniteRing, mask: Vec<bool>) -> Self {
        assert_eq!(mask.len(), ring.size());
        ElementSet { ring: ring.id(), mask }
    }

    pub fn from_handles(ring: &FiniteRing, handles: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(ring);
        for h in handles {
            s.mask[h] = true;
        }
        s
    }

    pub fn from_elements(ring: &FiniteRing, elems: &[Element]) -> Result<Self> {
        let mut s = Self::empty(ring);
        for &e in elems {
            s.mask[ring.owns(e)?] = true;
        }
        Ok(s)
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    pub fn contains(&self, e: Element) -> bool {
        e.ring == self.ring && self.mask[e.handle()]
    }

    #[inline]
    pub fn contains_handle(&self, h: usize) -> bool {
        self.mask[h]
    }

    pub(crate) fn insert_handle(&mut self, h: usize) -> bool {
        !std::mem::replace(&mut self.mask[h], true)
    }

    pub fn handles(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(h, _)| h)
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        let ring = self.ring;
        self.handles().map(move |h| Element { ring, handle: h as u32 })
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.ring == other.ring && self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.zip(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.zip(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.zip(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> ElementSet {
        ElementSet { ring: self.ring, mask: self.mask.iter().map(|&b| !b).collect() }
    }

    fn zip(&self, other: &ElementSet, op: impl Fn(bool, bool) -> bool) -> ElementSet {
        assert_eq!(self.ring, other.ring, "set operation across rings");
        ElementSet {
            ring: self.ring,
            mask: self.mask.iter().zip(&other.mask).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    /// Element names, in handle order.
    pub fn names(&self, ring: &FiniteRing) -> Vec<String> {
        self.handles().map(|h| ring.name_ix(h).to_string()).collect()
    }
}

// Standard constructions.

/// The integers modulo `n`.
pub fn make_zn(n: u64) -> Result<FiniteRing> {
    if n < 2 {
        return Err(ZdaError::InvalidParameter(format!("Z_n needs n >= 2, got {n}")));
    }
    check_size(usize::try_from(n).unwrap_or(usize::MAX))?;
    let m = n as usize;
    FiniteRing::build(
        format!("Z{n}"),
        (0..m).map(|k| k.to_string()).collect(),
        0,
        1,
        Shape::Integers(n),
        |a, b| (a + b) % m,
        |a, b| (a * b) % m,
    )
}

fn wrap_label(ring: &FiniteRing) -> String {
    match ring.shape() {
        Shape::Integers(_) => ring.label().to_string(),
        _ => format!("({})", ring.label()),
    }
}

/// Componentwise product `a x b`. Handle of `(i, j)` is `i * |b| + j`.
pub fn direct_product(a: &FiniteRing, b: &FiniteRing) -> Result<FiniteRing> {
    let (na, nb) = (a.size(), b.size());
    check_size(na.saturating_mul(nb))?;
    let left = match a.shape() {
        Shape::Product(..) | Shape::Integers(_) => a.label().to_string(),
        _ => wrap_label(a),
    };
    let label = format!("{left}*{}", wrap_label(b));
    let names = (0..na * nb)
        .map(|h| format!("({}, {})", a.name_ix(h / nb), b.name_ix(h % nb)))
        .collect();
    FiniteRing::build(
        label,
        names,
        a.zero_ix() * nb + b.zero_ix(),
        a.one_ix() * nb + b.one_ix(),
        Shape::Product(a.clone(), b.clone()),
        |x, y| a.add_ix(x / nb, y / nb) * nb + b.add_ix(x % nb, y % nb),
        |x, y| a.mul_ix(x / nb, y / nb) * nb + b.mul_ix(x % nb, y % nb),
    )
}

/// `base[var] / (modulus)` for a monic modulus given lowest degree first.
pub fn poly_quotient(base: &FiniteRing, modulus: &[Element], var: &str) -> Result<FiniteRing> {
    let coeffs = modulus.iter().map(|&e| base.owns(e)).collect::<Result<Vec<_>>>()?;
    poly_quotient_ix(base, &coeffs, var)
}

pub(crate) fn poly_quotient_ix(base: &FiniteRing, modulus: &[usize], var: &str) -> Result<FiniteRing> {
    if modulus.len() < 2 {
        return Err(ZdaError::InvalidParameter("modulus must have degree at least 1".into()));
    }
    if *modulus.last().unwrap() != base.one_ix() {
        return Err(ZdaError::InvalidParameter("modulus polynomial must be monic".into()));
    }
    let d = modulus.len() - 1;
    let q = base.size();
    let size = (0..d).try_fold(1usize, |acc, _| acc.checked_mul(q)).unwrap_or(usize::MAX);
    check_size(size)?;
    let shape = PolyShape { base: base.clone(), modulus: modulus.to_vec(), var: var.to_string() };
    let label = format!("{}[{var}]/({})", wrap_label(base), poly_to_string(base, modulus, var));
    let names = (0..size).map(|h| poly_to_string(base, &shape.coefficients(h), var)).collect();
    let digits: Vec<Vec<usize>> = (0..size).map(|h| shape.coefficients(h)).collect();
    let pack = |c: &[usize]| c.iter().rev().fold(0, |acc, &v| acc * q + v);
    let add = |x: usize, y: usize| {
        digits[x].iter().zip(&digits[y]).rev().fold(0, |acc, (&a, &b)| acc * q + base.add_ix(a, b))
    };
    let mul = |x: usize, y: usize| {
        let (cx, cy) = (&digits[x], &digits[y]);
        let mut stack = [0usize; 32];
        let mut heap = Vec::new();
        let prod: &mut [usize] = if 2 * d - 1 <= stack.len() {
            &mut stack[..2 * d - 1]
        } else {
            heap.resize(2 * d - 1, 0);
            &mut heap
        };
        prod.fill(base.zero_ix());
        for (i, &a) in cx.iter().enumerate() {
            if a == base.zero_ix() {
                continue;
            }
            for (j, &b) in cy.iter().enumerate() {
                prod[i + j] = base.add_ix(prod[i + j], base.mul_ix(a, b));
            }
        }
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c == base.zero_ix() {
                continue;
            }
            // x^k = x^(k-d) * x^d and x^d = -(f_0 + ... + f_{d-1} x^(d-1))
            for (i, &f) in modulus[..d].iter().enumerate() {
                let t = base.mul_ix(c, f);
                prod[k - d + i] = base.sub_ix(prod[k - d + i], t);
            }
        }
        pack(&prod[..d])
    };
    let zero = shape.handle_of(&vec![base.zero_ix(); d]);
    let mut one_c = vec![base.zero_ix(); d];
    one_c[0] = base.one_ix();
    let one = shape.handle_of(&one_c);
    let shape_out = Shape::PolyQuotient(shape.clone());
    FiniteRing::build(label, names, zero, one, shape_out, add, mul)
}

/// Render coefficients (lowest degree first) as e.g. `1+2x+x^3`.
pub fn poly_to_string(base: &FiniteRing, coeffs: &[usize], var: &str) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == base.zero_ix() {
            continue;
        }
        let cname = base.name_ix(c);
        let cname = if cname.contains(['+', ' ', ',']) { format!("({cname})") } else { cname.to_string() };
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let term = if k == 0 {
            cname
        } else if c == base.one_ix() {
            mono
        } else {
            format!("{cname}{mono}")
        };
        terms.push(term);
    }
    if terms.is_empty() {
        base.name_ix(base.zero_ix()).to_string()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ring: &FiniteRing, hs: &[usize]) -> ElementSet {
        ElementSet::from_handles(ring, hs.iter().copied())
    }

    fn h(ring: &FiniteRing, name: &str) -> usize {
        ring.find(name).unwrap_or_else(|| panic!("{name} not in {ring}")).handle()
    }

    #[test]
    fn zn_examples() {
        let z6 = make_zn(6).unwrap();
        assert_eq!(z6.size(), 6);
        assert_eq!(z6.mul_ix(2, 3), 0);
        let z2 = make_zn(2).unwrap();
        assert_eq!(z2.size(), 2);
        assert_ne!(z2.zero(), z2.one());
        let z9 = make_zn(9).unwrap();
        assert_eq!(z9.mul_ix(3, 3), 0);
        assert_eq!(z9.mul_ix(3, 6), 0);
    }

    #[test]
    fn zn_rejects_small_moduli() {
        assert!(matches!(make_zn(1), Err(ZdaError::InvalidParameter(_))));
        assert!(matches!(make_zn(0), Err(ZdaError::InvalidParameter(_))));
    }

    #[test]
    fn product_examples() {
        let z2 = make_zn(2).unwrap();
        let p = direct_product(&z2, &z2).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(p.mul_ix(h(&p, "(1, 0)"), h(&p, "(0, 1)")), h(&p, "(0, 0)"));
        let z6 = make_zn(6).unwrap();
        assert_eq!(direct_product(&z6, &z6).unwrap().size(), 36);
    }

    #[test]
    fn z3_squared_zero_divisors_by_enumeration() {
        let z3 = make_zn(3).unwrap();
        let p = direct_product(&z3, &z3).unwrap();
        // brute force over all pairs of names
        let mut expected = vec![];
        for x in 0..9 {
            let (a, b) = (x / 3, x % 3);
            if (a, b) != (0, 0) && (a == 0 || b == 0) {
                expected.push(x);
            }
        }
        let zd: Vec<usize> = p.zero_divisors().handles().filter(|&x| x != p.zero_ix()).collect();
        assert_eq!(zd, expected);
    }

    #[test]
    fn poly_quotient_examples() {
        let z2 = make_zn(2).unwrap();
        let s = poly_quotient_ix(&z2, &[0, 0, 0, 1], "x").unwrap();
        assert_eq!(s.size(), 8);
        assert_eq!(s.mul_ix(h(&s, "x"), h(&s, "x^2")), s.zero_ix());
        assert_eq!(s.mul_ix(h(&s, "x"), h(&s, "x")), h(&s, "x^2"));
        let z4 = make_zn(4).unwrap();
        assert_eq!(poly_quotient_ix(&z4, &[0, 0, 0, 1], "x").unwrap().size(), 64);
        let lin = poly_quotient_ix(&z4, &[0, 1], "x").unwrap();
        assert_eq!(lin.size(), 4);
        assert_eq!(lin.mul_ix(h(&lin, "2"), h(&lin, "2")), lin.zero_ix());
        assert_eq!(lin.mul_ix(h(&lin, "3"), h(&lin, "3")), h(&lin, "1"));
    }

    #[test]
    fn poly_quotient_rejects_non_monic() {
        let z4 = make_zn(4).unwrap();
        assert!(matches!(poly_quotient_ix(&z4, &[0, 2], "x"), Err(ZdaError::InvalidParameter(_))));
        assert!(matches!(poly_quotient_ix(&z4, &[1], "x"), Err(ZdaError::InvalidParameter(_))));
    }

    #[test]
    fn non_trivial_modulus_reduction() {
        // Z3[x]/(x^2+1) is the field with nine elements
        let z3 = make_zn(3).unwrap();
        let f9 = poly_quotient_ix(&z3, &[1, 0, 1], "x").unwrap();
        assert!(f9.is_field());
        let x = h(&f9, "x");
        assert_eq!(f9.mul_ix(x, x), h(&f9, "2"));
    }

    #[test]
    fn units_examples() {
        let z6 = make_zn(6).unwrap();
        assert_eq!(z6.units(), &set(&z6, &[1, 5]));
        let z4 = make_zn(4).unwrap();
        assert_eq!(z4.units(), &set(&z4, &[1, 3]));
        let z2 = make_zn(2).unwrap();
        let b = direct_product(&z2, &z2).unwrap();
        assert_eq!(b.units(), &set(&b, &[h(&b, "(1, 1)")]));
    }

    #[test]
    fn zero_divisor_examples() {
        let z6 = make_zn(6).unwrap();
        // pair scan
        let scan: Vec<usize> = (0..6).filter(|&a| (1..6).any(|b| a * b % 6 == 0)).collect();
        assert_eq!(scan, vec![0, 2, 3, 4]);
        assert_eq!(z6.zero_divisors(), &set(&z6, &scan));
        let z4 = make_zn(4).unwrap();
        assert_eq!(z4.zero_divisors(), &set(&z4, &[0, 2]));
        let f7 = make_zn(7).unwrap();
        assert_eq!(f7.zero_divisors(), &set(&f7, &[0]));
    }

    #[test]
    fn regular_element_examples() {
        let z6 = make_zn(6).unwrap();
        assert_eq!(z6.regular_elements(), set(&z6, &[1, 5]));
        let z4 = make_zn(4).unwrap();
        assert_eq!(z4.regular_elements(), set(&z4, &[1, 3]));
        let z9 = make_zn(9).unwrap();
        assert_eq!(z9.regular_elements(), set(&z9, &[1, 2, 4, 5, 7, 8]));
    }

    #[test]
    fn nilpotent_examples() {
        let z4 = make_zn(4).unwrap();
        assert_eq!(z4.nilpotents(), &set(&z4, &[0, 2]));
        let z6 = make_zn(6).unwrap();
        assert_eq!(z6.nilpotents(), &set(&z6, &[0]));
        let z2 = make_zn(2).unwrap();
        let s = poly_quotient_ix(&z2, &[0, 0, 0, 1], "x").unwrap();
        let cubed_zero: Vec<usize> = (0..8).filter(|&a| s.pow_ix(a, 3) == s.zero_ix()).collect();
        let expected = set(&s, &[h(&s, "0"), h(&s, "x"), h(&s, "x^2"), h(&s, "x+x^2")]);
        assert_eq!(set(&s, &cubed_zero), expected);
        assert_eq!(s.nilpotents(), &expected);
    }

    #[test]
    fn idempotent_examples() {
        let z6 = make_zn(6).unwrap();
        let squares: Vec<usize> = (0..6).filter(|&a| a * a % 6 == a).collect();
        assert_eq!(squares, vec![0, 1, 3, 4]);
        assert_eq!(z6.idempotents(), set(&z6, &squares));
        let z4 = make_zn(4).unwrap();
        assert_eq!(z4.idempotents(), set(&z4, &[0, 1]));
        let z2 = make_zn(2).unwrap();
        let b = direct_product(&z2, &z2).unwrap();
        assert_eq!(b.idempotents().len(), 4);
    }

    #[test]
    fn structural_predicates() {
        let z5 = make_zn(5).unwrap();
        assert!(z5.is_field() && z5.is_domain() && z5.is_local());
        let z6 = make_zn(6).unwrap();
        assert!(!z6.is_domain());
        assert!(z6.is_reduced());
        assert!(!z6.is_local());
        let z4 = make_zn(4).unwrap();
        assert!(z4.is_local());
        assert!(!z4.is_reduced());
    }

    #[test]
    fn boolean_four_detection() {
        let z2 = make_zn(2).unwrap();
        assert!(direct_product(&z2, &z2).unwrap().is_boolean_four());
        assert!(!make_zn(4).unwrap().is_boolean_four());
        let dual = poly_quotient_ix(&z2, &[0, 0, 1], "x").unwrap();
        assert_eq!(dual.mul_ix(h(&dual, "x"), h(&dual, "x")), dual.zero_ix());
        assert!(!dual.is_boolean_four());
    }

    #[test]
    fn carrier_bound_is_enforced() {
        let big = max_carrier() as u64 + 1;
        assert!(matches!(make_zn(big), Err(ZdaError::CarrierTooLarge { .. })));
    }

    #[test]
    fn from_tables_rejects_broken_tables() {
        // Z3 addition with a non-associative multiplication
        let add: Vec<u32> = (0..9).map(|k| ((k / 3 + k % 3) % 3) as u32).collect();
        let mut mul: Vec<u32> = (0..9).map(|k| ((k / 3) * (k % 3) % 3) as u32).collect();
        mul[2 * 3 + 2] = 2; // 2*2 = 2 breaks distributivity
        let names = vec!["0".into(), "1".into(), "2".into()];
        let err = FiniteRing::from_tables("bad", names.clone(), add.clone(), mul, 0, 1).unwrap_err();
        assert!(matches!(err, ZdaError::RingAxiom { .. }));
        let good: Vec<u32> = (0..9).map(|k| ((k / 3) * (k % 3) % 3) as u32).collect();
        let r = FiniteRing::from_tables("Z3", names, add, good, 0, 1).unwrap();
        assert!(r.is_field());
    }

    #[test]
    fn cross_ring_operations_fail() {
        let a = make_zn(4).unwrap();
        let b = make_zn(4).unwrap();
        assert_eq!(a.add(a.one(), b.one()), Err(ZdaError::CrossRing));
        assert_eq!(a.mul(a.one(), a.one()).unwrap(), a.one());
        assert!(a.element(4).is_err());
    }
}
