//! Verified ring homomorphisms between finite rings.

use std::fmt;

use crate::error::{Result, ZdaError};
use crate::ideal::Ideal;
use crate::ring::{Element, ElementSet, FiniteRing, Shape};

/// A unital ring homomorphism, checked exhaustively at construction.
#[derive(Clone)]
pub struct RingHom {
    source: FiniteRing,
    target: FiniteRing,
    map: Vec<u32>,
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingHom({} -> {})", self.source.label(), self.target.label())
    }
}

impl RingHom {
    /// `map[h]` is the image of source handle `h`.
    pub fn from_handles(source: &FiniteRing, target: &FiniteRing, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(ZdaError::InvalidParameter(format!(
                "map has {} entries, source has {} elements",
                map.len(),
                source.size()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.size()) {
            return Err(ZdaError::HandleOutOfRange { handle: bad, size: target.size() });
        }
        let hom = RingHom {
            source: source.clone(),
            target: target.clone(),
            map: map.into_iter().map(|v| v as u32).collect(),
        };
        hom.verify()?;
        Ok(hom)
    }

    fn verify(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let f = |x: usize| self.apply_ix(x);
        if f(s.zero_ix()) != t.zero_ix() {
            return Err(ZdaError::NotAHomomorphism {
                law: "f(0) = 0",
                witness: t.name_ix(f(s.zero_ix())).to_string(),
            });
        }
        if f(s.one_ix()) != t.one_ix() {
            return Err(ZdaError::NotAHomomorphism {
                law: "f(1) = 1",
                witness: t.name_ix(f(s.one_ix())).to_string(),
            });
        }
        for x in 0..s.size() {
            for y in x..s.size() {
                let witness = || format!("({}, {})", s.name_ix(x), s.name_ix(y));
                if f(s.add_ix(x, y)) != t.add_ix(f(x), f(y)) {
                    return Err(ZdaError::NotAHomomorphism { law: "f(x+y) = f(x)+f(y)", witness: witness() });
                }
                if f(s.mul_ix(x, y)) != t.mul_ix(f(x), f(y)) {
                    return Err(ZdaError::NotAHomomorphism { law: "f(xy) = f(x)f(y)", witness: witness() });
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &FiniteRing {
        &self.source
    }

    pub fn target(&self) -> &FiniteRing {
        &self.target
    }

    #[inline]
    pub fn apply_ix(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn apply(&self, x: Element) -> Result<Element> {
        let h = self.source.owns(x)?;
        self.target.element(self.apply_ix(h))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &RingHom) -> Result<RingHom> {
        if self.target != next.source {
            return Err(ZdaError::CrossRing);
        }
        let map = (0..self.source.size()).map(|x| next.apply_ix(self.apply_ix(x))).collect();
        RingHom::from_handles(&self.source, &next.target, map)
    }

    /// `{ x : f(x) in J }`.
    pub fn preimage(&self, j: &Ideal) -> Result<Ideal> {
        preimage_ideal(self, j)
    }

    /// Readable listing `x -> f(x)`.
    pub fn describe(&self) -> String {
        (0..self.source.size())
            .map(|x| format!("{} -> {}", self.source.name_ix(x), self.target.name_ix(self.apply_ix(x))))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub fn make_hom(source: &FiniteRing, target: &FiniteRing, images: &[Element]) -> Result<RingHom> {
    let map = images.iter().map(|&e| target.owns(e)).collect::<Result<Vec<_>>>()?;
    RingHom::from_handles(source, target, map)
}

pub fn identity_hom(ring: &FiniteRing) -> RingHom {
    RingHom::from_handles(ring, ring, (0..ring.size()).collect()).expect("identity is a homomorphism")
}

/// The canonical map between two rings built from the standard families.
///
/// Resolved cases: `Z_n -> Z_m` for `m | n` (reduction), `Z_n -> A` via
/// `k -> k * 1` when the characteristic of `A` divides `n`, products
/// componentwise (product to product) or diagonally (into a product),
/// constants into polynomial quotients (including `A -> A[x]/(g)`), and
/// polynomial quotients to polynomial quotients by mapping coefficients and
/// the indeterminate to the indeterminate. Anything else is refused rather than guessed.
pub fn natural_hom(source: &FiniteRing, target: &FiniteRing) -> Result<RingHom> {
    let unresolved = |reason: String| ZdaError::UnresolvableNaturalHom {
        source_label: source.label().to_string(),
        target: target.label().to_string(),
        reason,
    };
    let map = natural_map(source, target).map_err(unresolved)?;
    RingHom::from_handles(source, target, map).map_err(|e| match e {
        ZdaError::NotAHomomorphism { law, witness } => {
            unresolved(format!("candidate map breaks `{law}` at {witness}"))
        }
        other => other,
    })
}

fn natural_map(src: &FiniteRing, tgt: &FiniteRing) -> std::result::Result<Vec<usize>, String> {
    if src == tgt {
        return Ok((0..src.size()).collect());
    }
    match (src.shape(), tgt.shape()) {
        (Shape::Integers(n), Shape::Integers(m)) => {
            if n % m != 0 {
                return Err(format!("{m} does not divide {n}"));
            }
            Ok((0..src.size()).map(|a| a % *m as usize).collect())
        }
        (Shape::Product(a1, b1), Shape::Product(a2, b2)) => {
            let ma = natural_map(a1, a2)?;
            let mb = natural_map(b1, b2)?;
            let (nb1, nb2) = (b1.size(), b2.size());
            Ok((0..src.size()).map(|h| ma[h / nb1] * nb2 + mb[h % nb1]).collect())
        }
        (_, Shape::Product(a2, b2)) => {
            let ma = natural_map(src, a2)?;
            let mb = natural_map(src, b2)?;
            let nb2 = b2.size();
            Ok((0..src.size()).map(|h| ma[h] * nb2 + mb[h]).collect())
        }
        // constants of A[x]/(g) have the same handles as in A
        (_, Shape::PolyQuotient(pt)) if *src == pt.base => Ok((0..src.size()).collect()),
        (Shape::PolyQuotient(ps), Shape::PolyQuotient(pt)) => {
            let cm = natural_map(&ps.base, &pt.base)?;
            // image of the indeterminate: x itself, or -f_0 when the target modulus is linear
            let xt = if pt.degree() >= 2 {
                let mut c = vec![pt.base.zero_ix(); pt.degree()];
                c[1] = pt.base.one_ix();
                pt.handle_of(&c)
            } else {
                pt.base.neg_ix(pt.modulus[0])
            };
            Ok((0..src.size())
                .map(|h| {
                    let mut acc = tgt.zero_ix();
                    let mut xpow = tgt.one_ix();
                    for c in ps.coefficients(h) {
                        // constants sit at the low digit, so the handle of c equals its coefficient handle
                        acc = tgt.add_ix(acc, tgt.mul_ix(cm[c], xpow));
                        xpow = tgt.mul_ix(xpow, xt);
                    }
                    acc
                })
                .collect())
        }
        (_, Shape::PolyQuotient(pt)) => natural_map(src, &pt.base),
        (Shape::Integers(_), _) => Ok((0..src.size()).map(|a| tgt.from_int_ix(a as i64)).collect()),
        (Shape::Product(..), _) => Err("a product has no canonical map into a non-product".into()),
        (Shape::PolyQuotient(_), _) => {
            Err("the indeterminate has no canonical image outside a polynomial quotient".into())
        }
        (Shape::Other, _) => Err("source ring has no recorded construction".into()),
    }
}

/// The unique homomorphism with `f(a) = b` for every rule `(a, b)`, extended
/// through sums and products. Fails if the rules conflict, do not generate the
/// whole source, or do not define a homomorphism.
pub fn hom_from_rules(source: &FiniteRing, target: &FiniteRing, rules: &[(Element, Element)]) -> Result<RingHom> {
    let n = source.size();
    let mut img: Vec<Option<usize>> = vec![None; n];
    let mut known: Vec<usize> = Vec::new();
    let conflict = |x: usize, a: usize, b: usize| ZdaError::NotAHomomorphism {
        law: "consistent extension of map rules",
        witness: format!(
            "{} would map to both {} and {}",
            source.name_ix(x),
            target.name_ix(a),
            target.name_ix(b)
        ),
    };
    let mut seeds = vec![(source.zero_ix(), target.zero_ix()), (source.one_ix(), target.one_ix())];
    for &(a, b) in rules {
        seeds.push((source.owns(a)?, target.owns(b)?));
    }
    for (x, y) in seeds {
        match img[x] {
            Some(prev) if prev != y => return Err(conflict(x, prev, y)),
            Some(_) => {}
            None => {
                img[x] = Some(y);
                known.push(x);
            }
        }
    }
    let mut cursor = 0;
    while cursor < known.len() {
        let x = known[cursor];
        let fx = img[x].unwrap();
        let mut k = 0;
        while k <= cursor {
            let y = known[k];
            let fy = img[y].unwrap();
            for (z, fz) in [
                (source.add_ix(x, y), target.add_ix(fx, fy)),
                (source.mul_ix(x, y), target.mul_ix(fx, fy)),
            ] {
                match img[z] {
                    Some(prev) if prev != fz => return Err(conflict(z, prev, fz)),
                    Some(_) => {}
                    None => {
                        img[z] = Some(fz);
                        known.push(z);
                    }
                }
            }
            k += 1;
        }
        cursor += 1;
    }
    if let Some(missing) = img.iter().position(Option::is_none) {
        return Err(ZdaError::InvalidParameter(format!(
            "map rules do not determine the image of {}",
            source.name_ix(missing)
        )));
    }
    RingHom::from_handles(source, target, img.into_iter().map(Option::unwrap).collect())
}

pub fn preimage_ideal(f: &RingHom, j: &Ideal) -> Result<Ideal> {
    if j.ring() != f.target() {
        return Err(ZdaError::CrossRing);
    }
    let mask = (0..f.source().size())
        .map(|x| j.members().contains_handle(f.apply_ix(x)))
        .collect();
    Ideal::from_set(f.source(), ElementSet::from_mask(f.source(), mask))
        .map_err(|e| ZdaError::Internal(format!("preimage is not an ideal: {e}")))
}
