//! Amalgamated algebras and the constructions that specialise them:
//! amalgamated duplication, idealization and the n-trivial extension.
//!
//! `R ⋈^f J = { (r, f(r) + j) : r in R, j in J }` is materialised as an
//! explicit subring of `R x S`, and every carrier element keeps its `(r, j)`
//! witness so reports can name elements as pairs.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, ZdaError};
use crate::hom::{identity_hom, natural_hom, RingHom};
use crate::ideal::Ideal;
use crate::ring::{check_size, ElementSet, FiniteRing, Shape};
use crate::spectrum::prime_spectrum;

/// Above this many cases the module and extension laws are sampled.
const EXHAUSTIVE_LAW_CASES: usize = 1 << 21;
const LAW_SAMPLES: usize = 20_000;
const LAW_SEED: u64 = 0x06d0_d1e5;

/// The data `(R, S, f, J)` of an amalgamation.
#[derive(Clone)]
pub struct AmalgamSpec {
    base: FiniteRing,
    host: FiniteRing,
    hom: RingHom,
    ideal: Ideal,
}

impl fmt::Debug for AmalgamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AmalgamSpec({})", self.describe())
    }
}

impl AmalgamSpec {
    /// `J` must be a nonzero proper ideal of `S`, and `f: R -> S`.
    pub fn new(base: &FiniteRing, host: &FiniteRing, hom: &RingHom, ideal: &Ideal) -> Result<Self> {
        if hom.source() != base || hom.target() != host {
            return Err(ZdaError::InvalidSpec("homomorphism must map R to S".into()));
        }
        if ideal.ring() != host {
            return Err(ZdaError::InvalidSpec("J must be an ideal of S".into()));
        }
        if ideal.is_zero() {
            return Err(ZdaError::InvalidSpec("J must be nonzero".into()));
        }
        if !ideal.is_proper() {
            return Err(ZdaError::InvalidSpec("J must be a proper ideal".into()));
        }
        Ok(AmalgamSpec { base: base.clone(), host: host.clone(), hom: hom.clone(), ideal: ideal.clone() })
    }

    pub fn base(&self) -> &FiniteRing {
        &self.base
    }

    pub fn host(&self) -> &FiniteRing {
        &self.host
    }

    pub fn hom(&self) -> &RingHom {
        &self.hom
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn describe(&self) -> String {
        let same = |g: &RingHom| (0..self.base.size()).all(|x| g.apply_ix(x) == self.hom.apply_ix(x));
        let f = if self.hom.is_identity() {
            "identity".to_string()
        } else if natural_hom(&self.base, &self.host).is_ok_and(|g| same(&g)) {
            "natural".to_string()
        } else if self.base.size() <= 6 {
            format!("{{{}}}", self.hom.describe())
        } else {
            "map".to_string()
        };
        format!(
            "R={}, S={}, f={}, J={}",
            self.base.label(),
            self.host.label(),
            f,
            short_ideal(&self.ideal)
        )
    }

    /// `f⁻¹(J)`.
    pub fn contraction(&self) -> Ideal {
        self.hom.preimage(&self.ideal).expect("J lives in the target of f")
    }
}

fn short_ideal(j: &Ideal) -> String {
    if j.len() <= 8 {
        j.to_string()
    } else {
        format!("<{} elements of {}>", j.len(), j.ring().label())
    }
}

/// `R ⋈^f J` as a concrete ring.
#[derive(Clone)]
pub struct AmalgamRing {
    spec: AmalgamSpec,
    ring: FiniteRing,
    /// `(r, j)` for every carrier handle.
    witness: Vec<(u32, u32)>,
    /// `f(r) + j` for every carrier handle.
    host_coord: Vec<u32>,
}

impl fmt::Debug for AmalgamRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AmalgamRing({:?})", self.ring)
    }
}

impl AmalgamRing {
    pub fn spec(&self) -> &AmalgamSpec {
        &self.spec
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    /// `(r, j)` with the element equal to `(r, f(r) + j)`.
    pub fn witness(&self, h: usize) -> (usize, usize) {
        let (r, j) = self.witness[h];
        (r as usize, j as usize)
    }

    /// `(r, s)` as a pair in `R x S`.
    pub fn pair(&self, h: usize) -> (usize, usize) {
        (self.witness[h].0 as usize, self.host_coord[h] as usize)
    }
}

pub fn amalgamation(spec: &AmalgamSpec) -> Result<AmalgamRing> {
    let (r_ring, s_ring, f) = (&spec.base, &spec.host, &spec.hom);
    let j_members: Vec<usize> = spec.ideal.members().handles().collect();
    let nj = j_members.len();
    check_size(r_ring.size().saturating_mul(nj))?;
    let mut jpos = vec![u32::MAX; s_ring.size()];
    for (k, &j) in j_members.iter().enumerate() {
        jpos[j] = k as u32;
    }
    let mut witness = Vec::with_capacity(r_ring.size() * nj);
    let mut host_coord = Vec::with_capacity(r_ring.size() * nj);
    for r in 0..r_ring.size() {
        for &j in &j_members {
            witness.push((r as u32, j as u32));
            host_coord.push(s_ring.add_ix(f.apply_ix(r), j) as u32);
        }
    }
    let index = |r: usize, s: usize| -> usize {
        let j = s_ring.sub_ix(s, f.apply_ix(r));
        let k = jpos[j];
        debug_assert!(k != u32::MAX, "pair outside the amalgamation");
        r * nj + k as usize
    };
    let names = (0..witness.len())
        .map(|h| format!("({}, {})", r_ring.name_ix(witness[h].0 as usize), s_ring.name_ix(host_coord[h] as usize)))
        .collect();
    let label = if f.is_identity() {
        format!("{}⋈{}", r_ring.label(), short_ideal(&spec.ideal))
    } else {
        format!("{}⋈^f {}", r_ring.label(), short_ideal(&spec.ideal))
    };
    let zero = index(r_ring.zero_ix(), s_ring.zero_ix());
    let one = index(r_ring.one_ix(), s_ring.one_ix());
    let ring = FiniteRing::build(
        label,
        names,
        zero,
        one,
        Shape::Other,
        |x, y| {
            let (rx, sx) = (witness[x].0 as usize, host_coord[x] as usize);
            let (ry, sy) = (witness[y].0 as usize, host_coord[y] as usize);
            index(r_ring.add_ix(rx, ry), s_ring.add_ix(sx, sy))
        },
        |x, y| {
            let (rx, sx) = (witness[x].0 as usize, host_coord[x] as usize);
            let (ry, sy) = (witness[y].0 as usize, host_coord[y] as usize);
            index(r_ring.mul_ix(rx, ry), s_ring.mul_ix(sx, sy))
        },
    )?;
    Ok(AmalgamRing { spec: spec.clone(), ring, witness, host_coord })
}

/// `R ⋈ I`, the amalgamation along the identity.
pub fn duplication(ring: &FiniteRing, ideal: &Ideal) -> Result<AmalgamRing> {
    let spec = AmalgamSpec::new(ring, ring, &identity_hom(ring), ideal)?;
    amalgamation(&spec)
}

// Modules.

/// A finite `R`-module: an abelian group table plus an action table.
#[derive(Clone)]
pub struct ModuleData {
    base: FiniteRing,
    label: String,
    names: Vec<String>,
    add: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    /// `action[r * |M| + m] = r m`
    action: Vec<u32>,
}

impl fmt::Debug for ModuleData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleData({} over {})", self.label, self.base.label())
    }
}

impl ModuleData {
    pub fn new(
        base: &FiniteRing,
        label: impl Into<String>,
        names: Vec<String>,
        add: Vec<u32>,
        zero: usize,
        action: Vec<u32>,
    ) -> Result<Self> {
        let n = names.len();
        let invalid = |law: &'static str, witness: String| ZdaError::InvalidModule { law, witness };
        if n == 0 || zero >= n || add.len() != n * n || action.len() != base.size() * n {
            return Err(invalid("table shape", format!("{n} elements")));
        }
        if add.iter().chain(&action).any(|&v| v as usize >= n) {
            return Err(invalid("table range", "entry out of range".into()));
        }
        let neg = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| add[a * n + b] as usize == zero)
                    .map(|b| b as u32)
                    .ok_or_else(|| invalid("additive inverse", names[a].clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = ModuleData { base: base.clone(), label: label.into(), names, add, neg, zero: zero as u32, action };
        m.check_laws()?;
        Ok(m)
    }

    /// The target of `g` as an `R`-module through `r m = g(r) m`.
    pub fn from_hom(g: &RingHom) -> Result<Self> {
        let t = g.target();
        let n = t.size();
        let add = (0..n * n).map(|k| t.add_ix(k / n, k % n) as u32).collect();
        let action = (0..g.source().size() * n)
            .map(|k| t.mul_ix(g.apply_ix(k / n), k % n) as u32)
            .collect();
        Self::new(g.source(), t.label(), t.names().to_vec(), add, t.zero_ix(), action)
    }

    fn check_laws(&self) -> Result<()> {
        let (n, r) = (self.size(), &self.base);
        let invalid = |law: &'static str, witness: String| ZdaError::InvalidModule { law, witness };
        for a in 0..n {
            if self.add_ix(self.zero_ix(), a) != a {
                return Err(invalid("additive identity", self.names[a].clone()));
            }
            if self.act_ix(r.one_ix(), a) != a {
                return Err(invalid("1 m = m", self.names[a].clone()));
            }
            for b in 0..n {
                if self.add_ix(a, b) != self.add_ix(b, a) {
                    return Err(invalid("commutativity", format!("({}, {})", self.names[a], self.names[b])));
                }
            }
        }
        for_triples([n, n, n], |[a, b, c]| {
            if self.add_ix(self.add_ix(a, b), c) != self.add_ix(a, self.add_ix(b, c)) {
                return Err(invalid("associativity", self.names_of(&[a, b, c])));
            }
            Ok(())
        })?;
        for_triples([r.size(), n, n], |[s, a, b]| {
            if self.act_ix(s, self.add_ix(a, b)) != self.add_ix(self.act_ix(s, a), self.act_ix(s, b)) {
                return Err(invalid("r(m+m') = rm+rm'", format!("({}, {}, {})", r.name_ix(s), self.names[a], self.names[b])));
            }
            Ok(())
        })?;
        for_triples([r.size(), r.size(), n], |[s, t, a]| {
            if self.act_ix(r.add_ix(s, t), a) != self.add_ix(self.act_ix(s, a), self.act_ix(t, a)) {
                return Err(invalid("(r+r')m = rm+r'm", format!("({}, {}, {})", r.name_ix(s), r.name_ix(t), self.names[a])));
            }
            if self.act_ix(r.mul_ix(s, t), a) != self.act_ix(s, self.act_ix(t, a)) {
                return Err(invalid("(rr')m = r(r'm)", format!("({}, {}, {})", r.name_ix(s), r.name_ix(t), self.names[a])));
            }
            Ok(())
        })
    }

    fn names_of(&self, hs: &[usize]) -> String {
        format!("({})", hs.iter().map(|&h| self.names[h].as_str()).collect::<Vec<_>>().join(", "))
    }

    pub fn base(&self) -> &FiniteRing {
        &self.base
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name_ix(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn zero_ix(&self) -> usize {
        self.zero as usize
    }

    pub fn add_ix(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size() + b] as usize
    }

    pub fn neg_ix(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn act_ix(&self, r: usize, a: usize) -> usize {
        self.action[r * self.size() + a] as usize
    }
}

/// Run `check` on every triple of `0..dims[k]`, or on a fixed-seed sample
/// when there are too many.
fn for_triples(dims: [usize; 3], mut check: impl FnMut([usize; 3]) -> Result<()>) -> Result<()> {
    let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).unwrap_or(usize::MAX);
    if total <= EXHAUSTIVE_LAW_CASES {
        for a in 0..dims[0] {
            for b in 0..dims[1] {
                for c in 0..dims[2] {
                    check([a, b, c])?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(LAW_SEED);
        for _ in 0..LAW_SAMPLES {
            check([rng.gen_range(0..dims[0]), rng.gen_range(0..dims[1]), rng.gen_range(0..dims[2])])?;
        }
    }
    Ok(())
}

/// A ring together with the amalgamation data it is isomorphic to.
#[derive(Clone, Debug)]
pub struct Extension {
    pub ring: FiniteRing,
    /// `S = ring`, `J = 0 ⊕ M`, `f` the embedding of `R`.
    pub spec: AmalgamSpec,
}

/// Nagata's idealization `R ⋉ M` with `(r, m)(r', m') = (rr', rm' + r'm)`.
/// Handle of `(r, m)` is `r * |M| + m`.
pub fn idealization(base: &FiniteRing, module: &ModuleData) -> Result<Extension> {
    if module.base() != base {
        return Err(ZdaError::InvalidModule { law: "module over R", witness: module.label().to_string() });
    }
    let spec = TrivialExtSpec::new(base, vec![module.clone()], BTreeMap::new())?;
    let mut ext = n_trivial_extension(&spec)?;
    ext.ring = relabel(&ext.ring, format!("{}⋉{}", base.label(), module.label()))?;
    ext.spec = embedding_spec(base, &ext.ring, module_count_stride(&spec))?;
    Ok(ext)
}

fn relabel(ring: &FiniteRing, label: String) -> Result<FiniteRing> {
    let n = ring.size();
    FiniteRing::build(
        label,
        ring.names().to_vec(),
        ring.zero_ix(),
        ring.one_ix(),
        Shape::Other,
        |a, b| ring.add_ix(a, b),
        |a, b| ring.mul_ix(a, b),
    )
    .inspect(|r| debug_assert_eq!(r.size(), n))
}

/// Graded data for `R ⋉_n (M_1, ..., M_n)`.
#[derive(Clone)]
pub struct TrivialExtSpec {
    base: FiniteRing,
    modules: Vec<ModuleData>,
    /// `products[(i, j)][a * |M_j| + b] = φ_{i,j}(a, b) ∈ M_{i+j}`; absent maps are zero.
    products: BTreeMap<(usize, usize), Vec<u32>>,
}

impl fmt::Debug for TrivialExtSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TrivialExtSpec(n={} over {})", self.modules.len(), self.base.label())
    }
}

impl TrivialExtSpec {
    pub fn new(
        base: &FiniteRing,
        modules: Vec<ModuleData>,
        products: BTreeMap<(usize, usize), Vec<u32>>,
    ) -> Result<Self> {
        let n = modules.len();
        let invalid = |law: &'static str, witness: String| ZdaError::InvalidExtension { law, witness };
        if n == 0 {
            return Err(invalid("n >= 1", "no modules given".into()));
        }
        if let Some(m) = modules.iter().find(|m| m.base() != base) {
            return Err(invalid("modules over R", m.label().to_string()));
        }
        for (&(i, j), table) in &products {
            if i == 0 || j == 0 || i + j > n {
                return Err(invalid("1 <= i, j and i + j <= n", format!("φ_{{{i},{j}}}")));
            }
            let (mi, mj, mk) = (&modules[i - 1], &modules[j - 1], &modules[i + j - 1]);
            if table.len() != mi.size() * mj.size() || table.iter().any(|&v| v as usize >= mk.size()) {
                return Err(invalid("table shape", format!("φ_{{{i},{j}}}")));
            }
        }
        let spec = TrivialExtSpec { base: base.clone(), modules, products };
        spec.check_laws()?;
        Ok(spec)
    }

    /// Every `M_i` is the target of `g` viewed as an `R`-module; `φ_{i,j}` is
    /// multiplication in that ring when `ring_products`, otherwise zero.
    pub fn uniform(g: &RingHom, n: usize, ring_products: bool) -> Result<Self> {
        let module = ModuleData::from_hom(g)?;
        let t = g.target();
        let mut products = BTreeMap::new();
        if ring_products {
            let size = t.size();
            let table: Vec<u32> = (0..size * size).map(|k| t.mul_ix(k / size, k % size) as u32).collect();
            for i in 1..=n {
                for j in 1..=n {
                    if i + j <= n {
                        products.insert((i, j), table.clone());
                    }
                }
            }
        }
        Self::new(g.source(), vec![module; n], products)
    }

    pub fn n(&self) -> usize {
        self.modules.len()
    }

    pub fn base(&self) -> &FiniteRing {
        &self.base
    }

    pub fn modules(&self) -> &[ModuleData] {
        &self.modules
    }

    /// `φ_{i,j}(a, b)` for `i, j >= 1`; zero when `i + j > n` or the map is absent.
    pub fn phi(&self, i: usize, j: usize, a: usize, b: usize) -> Option<usize> {
        if i + j > self.n() {
            return None;
        }
        let target = &self.modules[i + j - 1];
        Some(match self.products.get(&(i, j)) {
            Some(t) => t[a * self.modules[j - 1].size() + b] as usize,
            None => target.zero_ix(),
        })
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.n();
        let r = &self.base;
        let invalid = |law: &'static str, witness: String| ZdaError::InvalidExtension { law, witness };
        for i in 1..=n {
            for j in 1..=n {
                if i + j > n {
                    continue;
                }
                let (mi, mj, mk) = (&self.modules[i - 1], &self.modules[j - 1], &self.modules[i + j - 1]);
                let phi = |a, b| self.phi(i, j, a, b).unwrap();
                let w = |a: usize, b: usize| format!("φ_{{{i},{j}}}({}, {})", mi.name_ix(a), mj.name_ix(b));
                for_triples([mi.size(), mj.size(), mj.size()], |[a, b, c]| {
                    if phi(a, mj.add_ix(b, c)) != mk.add_ix(phi(a, b), phi(a, c)) {
                        return Err(invalid("bilinearity in the second argument", w(a, b)));
                    }
                    Ok(())
                })?;
                for_triples([mi.size(), mi.size(), mj.size()], |[a, b, c]| {
                    if phi(mi.add_ix(a, b), c) != mk.add_ix(phi(a, c), phi(b, c)) {
                        return Err(invalid("bilinearity in the first argument", w(a, c)));
                    }
                    Ok(())
                })?;
                for_triples([r.size(), mi.size(), mj.size()], |[s, a, b]| {
                    let scaled = mk.act_ix(s, phi(a, b));
                    if phi(mi.act_ix(s, a), b) != scaled || phi(a, mj.act_ix(s, b)) != scaled {
                        return Err(invalid("R-bilinearity", format!("{} with r = {}", w(a, b), r.name_ix(s))));
                    }
                    Ok(())
                })?;
                for a in 0..mi.size() {
                    for b in 0..mj.size() {
                        if phi(a, b) != self.phi(j, i, b, a).unwrap() {
                            return Err(invalid("commutativity m_i m_j = m_j m_i", w(a, b)));
                        }
                    }
                }
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if i + j + k > n {
                        continue;
                    }
                    let (mi, mj, mk) = (&self.modules[i - 1], &self.modules[j - 1], &self.modules[k - 1]);
                    for_triples([mi.size(), mj.size(), mk.size()], |[a, b, c]| {
                        let left = self.phi(i + j, k, self.phi(i, j, a, b).unwrap(), c).unwrap();
                        let right = self.phi(i, j + k, a, self.phi(j, k, b, c).unwrap()).unwrap();
                        if left != right {
                            return Err(invalid(
                                "associativity (m_i m_j) m_k = m_i (m_j m_k)",
                                format!(
                                    "({}, {}, {}) in degrees ({i}, {j}, {k})",
                                    mi.name_ix(a),
                                    mj.name_ix(b),
                                    mk.name_ix(c)
                                ),
                            ));
                        }
                        Ok(())
                    })?;
                }
            }
        }
        Ok(())
    }
}

fn module_count_stride(spec: &TrivialExtSpec) -> usize {
    spec.modules.iter().map(ModuleData::size).product()
}

/// `S = ring`, `J` the elements with zero `R`-component, `f(r) = (r, 0, ..., 0)`.
fn embedding_spec(base: &FiniteRing, ring: &FiniteRing, stride: usize) -> Result<AmalgamSpec> {
    // handles are r * stride + (module digits); the all-zero module digits
    // are those of the ring's zero within its first block
    let zero_tail = ring.zero_ix() % stride;
    let embed: Vec<usize> = (0..base.size()).map(|r| r * stride + zero_tail).collect();
    let hom = RingHom::from_handles(base, ring, embed)?;
    let zero_head = ring.zero_ix() / stride;
    let j = ElementSet::from_handles(ring, (0..stride).map(|t| zero_head * stride + t));
    let ideal = Ideal::from_set(ring, j)?;
    AmalgamSpec::new(base, ring, &hom, &ideal)
}

/// `R ⋉_n M` on `R ⊕ M_1 ⊕ ... ⊕ M_n` with graded multiplication.
/// Handles are mixed radix with the `R` digit most significant.
pub fn n_trivial_extension(spec: &TrivialExtSpec) -> Result<Extension> {
    let r = &spec.base;
    let n = spec.n();
    let mut radix = vec![r.size()];
    radix.extend(spec.modules.iter().map(ModuleData::size));
    let size = radix.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).unwrap_or(usize::MAX);
    check_size(size)?;
    let decode = |mut h: usize| -> Vec<usize> {
        let mut digits = vec![0; n + 1];
        for k in (0..=n).rev() {
            digits[k] = h % radix[k];
            h /= radix[k];
        }
        digits
    };
    let encode = |digits: &[usize]| digits.iter().zip(&radix).fold(0, |acc, (&d, &q)| acc * q + d);
    let name = |h: usize| -> String {
        let d = decode(h);
        let mut parts = vec![r.name_ix(d[0]).to_string()];
        parts.extend((1..=n).map(|k| spec.modules[k - 1].name_ix(d[k]).to_string()));
        format!("({})", parts.join(", "))
    };
    let mut zero = vec![r.zero_ix()];
    zero.extend(spec.modules.iter().map(ModuleData::zero_ix));
    let mut one = zero.clone();
    one[0] = r.one_ix();
    let label = if n == 1 {
        format!("{}⋉{}", r.label(), spec.modules[0].label())
    } else {
        let ms: Vec<&str> = spec.modules.iter().map(ModuleData::label).collect();
        format!("{}⋉_{n}({})", r.label(), ms.join(", "))
    };
    let ring = FiniteRing::build(
        label,
        (0..size).map(name).collect(),
        encode(&zero),
        encode(&one),
        Shape::Other,
        |x, y| {
            let (a, b) = (decode(x), decode(y));
            let mut out = vec![r.add_ix(a[0], b[0])];
            out.extend((1..=n).map(|k| spec.modules[k - 1].add_ix(a[k], b[k])));
            encode(&out)
        },
        |x, y| {
            let (a, b) = (decode(x), decode(y));
            let mut out = vec![r.mul_ix(a[0], b[0])];
            for i in 1..=n {
                let m = &spec.modules[i - 1];
                let mut acc = m.add_ix(m.act_ix(a[0], b[i]), m.act_ix(b[0], a[i]));
                for j in 1..i {
                    acc = m.add_ix(acc, spec.phi(j, i - j, a[j], b[i - j]).unwrap());
                }
                out.push(acc);
            }
            encode(&out)
        },
    )?;
    let stride = module_count_stride(spec);
    let amalgam_spec = embedding_spec(r, &ring, stride)?;
    Ok(Extension { ring, spec: amalgam_spec })
}

// Amalgamation-specific sets and predicates.

/// Pairs whose `R`-coordinate is a zero-divisor of `R`.
pub fn z1_set(a: &AmalgamRing) -> ElementSet {
    let zr = a.spec.base.zero_divisors();
    let mask = (0..a.ring.size()).map(|h| zr.contains_handle(a.witness(h).0)).collect();
    ElementSet::from_mask(&a.ring, mask)
}

/// Pairs `(r, s)` with `j' s = 0` for some nonzero `j'` in `J`.
pub fn z2_set(a: &AmalgamRing) -> ElementSet {
    let s_ring = &a.spec.host;
    let jb: Vec<usize> = a.spec.ideal.members().handles().filter(|&j| j != s_ring.zero_ix()).collect();
    let mask = (0..a.ring.size())
        .map(|h| {
            let s = a.pair(h).1;
            jb.iter().any(|&j| s_ring.mul_ix(j, s) == s_ring.zero_ix())
        })
        .collect();
    ElementSet::from_mask(&a.ring, mask)
}

/// `Z(R ⋈^f J) = Z₁ ∪ Z₂`.
pub fn has_condition_star(a: &AmalgamRing) -> bool {
    a.ring.zero_divisors() == &z1_set(a).union(&z2_set(a))
}

/// The four structural properties of `(R, f, J)`:
/// (a) `Z(R)² = 0`; (b) `j f(r) ≠ 0` for regular `r`, nonzero `j`;
/// (c) `j f(r) = 0` for nonzero zero-divisors `r`, nonzero `j`; (d) `J² = 0`.
#[derive(Copy, Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Properties {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
}

impl Properties {
    pub fn evaluate(spec: &AmalgamSpec) -> Self {
        Properties { a: property_a(spec), b: property_b(spec), c: property_c(spec), d: property_d(spec) }
    }

    pub fn all(&self) -> bool {
        self.a && self.b && self.c && self.d
    }

    pub fn as_array(&self) -> [bool; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

fn nonzero_j(spec: &AmalgamSpec) -> Vec<usize> {
    let z = spec.host.zero_ix();
    spec.ideal.members().handles().filter(|&j| j != z).collect()
}

pub fn property_a(spec: &AmalgamSpec) -> bool {
    spec.base.zero_divisors_square_to_zero()
}

pub fn property_b(spec: &AmalgamSpec) -> bool {
    let (s, f) = (&spec.host, &spec.hom);
    let jb = nonzero_j(spec);
    spec.base
        .regular_elements()
        .handles()
        .all(|r| jb.iter().all(|&j| s.mul_ix(j, f.apply_ix(r)) != s.zero_ix()))
}

pub fn property_c(spec: &AmalgamSpec) -> bool {
    let (s, f) = (&spec.host, &spec.hom);
    let jb = nonzero_j(spec);
    spec.base
        .zero_divisors()
        .handles()
        .filter(|&r| r != spec.base.zero_ix())
        .all(|r| jb.iter().all(|&j| s.mul_ix(j, f.apply_ix(r)) == s.zero_ix()))
}

pub fn property_d(spec: &AmalgamSpec) -> bool {
    spec.ideal.squares_to_zero()
}

/// The primes of the amalgamation induced from `R` and from `S`.
#[derive(Clone, Debug)]
pub struct InducedPrimes {
    /// `{ (p, f(p) + j) : p in P, j in J }` for each prime `P` of `R`.
    pub from_base: Vec<Ideal>,
    /// `{ (r, f(r) + j) : f(r) + j in Q }` for each prime `Q` of `S` with `J ⊄ Q`.
    pub from_host: Vec<Ideal>,
}

pub fn induced_primes(a: &AmalgamRing) -> Result<InducedPrimes> {
    let spec = &a.spec;
    let n = a.ring.size();
    let from_base = prime_spectrum(&spec.base)?
        .primes
        .iter()
        .map(|p| {
            let mask = (0..n).map(|h| p.members().contains_handle(a.witness(h).0)).collect();
            Ideal::from_set(&a.ring, ElementSet::from_mask(&a.ring, mask))
        })
        .collect::<Result<Vec<_>>>()?;
    let from_host = prime_spectrum(&spec.host)?
        .primes
        .iter()
        .filter(|q| !spec.ideal.is_subset(q))
        .map(|q| {
            let mask = (0..n).map(|h| q.members().contains_handle(a.pair(h).1)).collect();
            Ideal::from_set(&a.ring, ElementSet::from_mask(&a.ring, mask))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InducedPrimes { from_base, from_host })
}

/// Induced primes must be pairwise distinct and exhaust the spectrum.
pub fn verify_spectrum(a: &AmalgamRing) -> Result<InducedPrimes> {
    let induced = induced_primes(a)?;
    let mut expected: Vec<Vec<usize>> = induced
        .from_base
        .iter()
        .chain(&induced.from_host)
        .map(|p| p.members().handles().collect())
        .collect();
    expected.sort();
    let before = expected.len();
    expected.dedup();
    if expected.len() != before {
        return Err(ZdaError::Internal(format!("induced primes of {} are not distinct", a.ring.label())));
    }
    let mut actual: Vec<Vec<usize>> = prime_spectrum(&a.ring)?
        .primes
        .iter()
        .map(|p| p.members().handles().collect())
        .collect();
    actual.sort();
    if actual != expected {
        return Err(ZdaError::Internal(format!(
            "spectrum of {} has {} primes, induced primes give {}",
            a.ring.label(),
            actual.len(),
            expected.len()
        )));
    }
    Ok(induced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::natural_hom;
    use crate::ideal::{ideal_generated, nonzero_proper_ideals};
    use crate::ring::{direct_product, make_zn, poly_quotient_ix};

    fn gen(ring: &FiniteRing, names: &[&str]) -> Ideal {
        let elems: Vec<_> = names.iter().map(|n| ring.find(n).unwrap()).collect();
        ideal_generated(ring, &elems).unwrap()
    }

    fn z(n: u64) -> FiniteRing {
        make_zn(n).unwrap()
    }

    #[test]
    fn amalgamation_sizes() {
        let z6 = z(6);
        let dup = duplication(&z6, &gen(&z6, &["3"])).unwrap();
        assert_eq!(dup.ring().size(), 12);

        let (z8, z4) = (z(8), z(4));
        let spec = AmalgamSpec::new(&z8, &z4, &natural_hom(&z8, &z4).unwrap(), &gen(&z4, &["2"])).unwrap();
        assert_eq!(amalgamation(&spec).unwrap().ring().size(), 16);

        let z2 = z(2);
        let b = direct_product(&z2, &z2).unwrap();
        let spec = AmalgamSpec::new(&z2, &b, &natural_hom(&z2, &b).unwrap(), &gen(&b, &["(0, 1)"])).unwrap();
        let a = amalgamation(&spec).unwrap();
        assert!(a.ring().is_boolean_four());
    }

    #[test]
    fn rejects_zero_and_unit_ideals() {
        let z6 = z(6);
        assert!(matches!(duplication(&z6, &Ideal::zero_ideal(&z6)), Err(ZdaError::InvalidSpec(_))));
        assert!(matches!(duplication(&z6, &Ideal::unit_ideal(&z6)), Err(ZdaError::InvalidSpec(_))));
    }

    #[test]
    fn duplication_sizes() {
        let z9 = z(9);
        assert_eq!(duplication(&z9, &gen(&z9, &["3"])).unwrap().ring().size(), 27);
        let z8 = z(8);
        assert_eq!(duplication(&z8, &gen(&z8, &["4"])).unwrap().ring().size(), 16);
        let z2 = z(2);
        let b = direct_product(&z2, &z2).unwrap();
        assert_eq!(duplication(&b, &gen(&b, &["(1, 0)"])).unwrap().ring().size(), 8);
    }

    #[test]
    fn amalgam_carrier_is_r_times_j() {
        for n in 2..=20u64 {
            let r = z(n);
            for i in nonzero_proper_ideals(&r).unwrap() {
                let a = duplication(&r, &i).unwrap();
                assert_eq!(a.ring().size(), r.size() * i.len());
            }
        }
    }

    fn natural_module(r: &FiniteRing, m: &FiniteRing) -> ModuleData {
        ModuleData::from_hom(&natural_hom(r, m).unwrap()).unwrap()
    }

    #[test]
    fn idealization_sizes() {
        let z9 = z(9);
        assert_eq!(idealization(&z9, &natural_module(&z9, &z9)).unwrap().ring.size(), 81);
        let (z8, z2) = (z(8), z(2));
        assert_eq!(idealization(&z8, &natural_module(&z8, &z2)).unwrap().ring.size(), 16);
        let z6 = z(6);
        let ext = idealization(&z6, &natural_module(&z6, &z6)).unwrap();
        assert_eq!(ext.ring.size(), 36);
        assert_eq!(amalgamation(&ext.spec).unwrap().ring().size(), 36);
    }

    #[test]
    fn invalid_module_is_rejected() {
        // Z2 as a Z3-"module" via a -> a mod 2 is not bilinear
        let (z3, z2) = (z(3), z(2));
        let action: Vec<u32> = (0..6).map(|k| ((k / 2) % 2 * (k % 2)) as u32).collect();
        let add: Vec<u32> = vec![0, 1, 1, 0];
        let err = ModuleData::new(&z3, "Z2", vec!["0".into(), "1".into()], add, 0, action).unwrap_err();
        assert!(matches!(err, ZdaError::InvalidModule { .. }), "{err}");
        let _ = z2;
    }

    #[test]
    fn one_trivial_extension_equals_idealization() {
        for (n, m) in [(9u64, 9u64), (8, 2), (6, 3), (4, 2)] {
            let (r, t) = (z(n), z(m));
            let g = natural_hom(&r, &t).unwrap();
            let ideal = idealization(&r, &ModuleData::from_hom(&g).unwrap()).unwrap().ring;
            let one = n_trivial_extension(&TrivialExtSpec::uniform(&g, 1, false).unwrap()).unwrap().ring;
            assert_eq!(ideal.size(), one.size());
            for x in 0..ideal.size() {
                for y in 0..ideal.size() {
                    assert_eq!(ideal.add_ix(x, y), one.add_ix(x, y));
                    assert_eq!(ideal.mul_ix(x, y), one.mul_ix(x, y));
                }
            }
        }
    }

    fn augmentation_power_vanishes(ext: &Extension, power: u32) -> bool {
        let j: Vec<usize> = ext.spec.ideal().members().handles().collect();
        // products of `power` elements of J, by iterated table lookups
        let mut layer: Vec<usize> = j.clone();
        for _ in 1..power {
            let mut next = ElementSet::empty(&ext.ring);
            for &a in &layer {
                for &b in &j {
                    next.insert_handle(ext.ring.mul_ix(a, b));
                }
            }
            layer = next.handles().collect();
        }
        layer.iter().all(|&x| x == ext.ring.zero_ix())
    }

    #[test]
    fn two_trivial_extension_with_ring_products() {
        let z2 = z(2);
        let g = natural_hom(&z2, &z2).unwrap();
        let ext = n_trivial_extension(&TrivialExtSpec::uniform(&g, 2, true).unwrap()).unwrap();
        assert_eq!(ext.ring.size(), 8);
        assert!(augmentation_power_vanishes(&ext, 3));
        assert!(!augmentation_power_vanishes(&ext, 2));
        // Z2 ⋉_2 (Z2, Z2) with φ = multiplication is Z2[x]/(x^3)
        assert_eq!(ext.ring.nilpotents().len(), 4);
        assert!(ext.ring.is_local());
    }

    #[test]
    fn two_trivial_extension_with_zero_products() {
        let z2 = z(2);
        let g = natural_hom(&z2, &z2).unwrap();
        let ext = n_trivial_extension(&TrivialExtSpec::uniform(&g, 2, false).unwrap()).unwrap();
        assert_eq!(ext.ring.size(), 8);
        assert!(augmentation_power_vanishes(&ext, 2));
        // J^2 = 0 lands in M_2 trivially, so J ⊆ Nil with J^2 = 0
        assert!(ext.spec.ideal().squares_to_zero());
    }

    #[test]
    fn non_commutative_products_are_rejected() {
        let z2 = z(2);
        let g = natural_hom(&z2, &z2).unwrap();
        let m = ModuleData::from_hom(&g).unwrap();
        // φ_{1,2} nonzero but φ_{2,1} zero
        let mut products = BTreeMap::new();
        products.insert((1, 2), vec![0u32, 0, 0, 1]);
        let err = TrivialExtSpec::new(&z2, vec![m.clone(), m.clone(), m], products).unwrap_err();
        assert!(matches!(err, ZdaError::InvalidExtension { .. }), "{err}");
    }

    #[test]
    fn z1_and_z2_sets() {
        let z6 = z(6);
        let dup = duplication(&z6, &gen(&z6, &["3"])).unwrap();
        let z1 = z1_set(&dup);
        for h in 0..dup.ring().size() {
            assert_eq!(z1.contains_handle(h), [0, 2, 3, 4].contains(&dup.witness(h).0));
        }
        assert!(z2_set(&dup).is_subset(dup.ring().zero_divisors()));

        let z2 = z(2);
        let b = direct_product(&z2, &z2).unwrap();
        let spec = AmalgamSpec::new(&z2, &b, &natural_hom(&z2, &b).unwrap(), &gen(&b, &["(0, 1)"])).unwrap();
        let a = amalgamation(&spec).unwrap();
        let mut names = z2_set(&a).names(a.ring());
        names.sort();
        assert_eq!(names, vec!["(0, (0, 0))", "(1, (1, 0))"]);
    }

    #[test]
    fn condition_star_on_small_amalgams() {
        let z6 = z(6);
        assert!(has_condition_star(&duplication(&z6, &gen(&z6, &["3"])).unwrap()));
        for n in 2..=16u64 {
            for m in (2..=n).filter(|m| n % m == 0) {
                let (r, s) = (z(n), z(m));
                let f = natural_hom(&r, &s).unwrap();
                for j in nonzero_proper_ideals(&s).unwrap() {
                    let a = amalgamation(&AmalgamSpec::new(&r, &s, &f, &j).unwrap()).unwrap();
                    assert!(has_condition_star(&a), "{}", a.ring());
                }
            }
        }
    }

    #[test]
    fn property_examples() {
        let z9 = z(9);
        let spec = duplication(&z9, &gen(&z9, &["3"])).unwrap().spec().clone();
        assert_eq!(Properties::evaluate(&spec), Properties { a: true, b: true, c: true, d: true });

        let z6 = z(6);
        let spec = duplication(&z6, &gen(&z6, &["3"])).unwrap().spec().clone();
        assert!(!property_a(&spec));
        assert!(!property_c(&spec));

        let z2 = z(2);
        let s = poly_quotient_ix(&z2, &[0, 0, 0, 1], "x").unwrap();
        let f = natural_hom(&z2, &s).unwrap();
        let spec = AmalgamSpec::new(&z2, &s, &f, &gen(&s, &["x"])).unwrap();
        assert!(!property_d(&spec));
        assert!(property_a(&spec) && property_b(&spec) && property_c(&spec));
    }

    #[test]
    fn induced_primes_examples() {
        let z6 = z(6);
        let dup = duplication(&z6, &gen(&z6, &["3"])).unwrap();
        let ip = verify_spectrum(&dup).unwrap();
        assert_eq!(ip.from_base.len(), 2);
        assert_eq!(ip.from_host.len(), 1);

        let z4 = z(4);
        let dup = duplication(&z4, &gen(&z4, &["2"])).unwrap();
        assert!(verify_spectrum(&dup).unwrap().from_host.is_empty());

        let z2 = z(2);
        let b = direct_product(&z2, &z2).unwrap();
        let spec = AmalgamSpec::new(&z2, &b, &natural_hom(&z2, &b).unwrap(), &gen(&b, &["(0, 1)"])).unwrap();
        let ip = verify_spectrum(&amalgamation(&spec).unwrap()).unwrap();
        assert_eq!((ip.from_base.len(), ip.from_host.len()), (1, 1));
    }
}
