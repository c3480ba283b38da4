//! Prime spectrum of a finite ring via its idempotent decomposition.
//!
//! A finite commutative ring is a product of local rings `e_i A`, one per
//! primitive idempotent `e_i`. Each factor contributes exactly one prime,
//! `P_e = { x : e x is not a unit of e A }`, and these are all the primes.

use crate::error::{Result, ZdaError};
use crate::ideal::Ideal;
use crate::ring::{Element, ElementSet, FiniteRing};

#[derive(Clone, Debug)]
pub(crate) struct SpectrumData {
    primes: Vec<ElementSet>,
    primitive_idempotents: Vec<usize>,
    local_factor_sizes: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub primes: Vec<Ideal>,
    pub primitive_idempotents: Vec<Element>,
    /// `|e A|` for each primitive idempotent, in the same order.
    pub local_factor_sizes: Vec<usize>,
}

impl SpectrumResult {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// All prime ideals of `ring`. Every returned prime has passed the direct
/// primality test; a disagreement with the decomposition is reported as an
/// internal-consistency error.
pub fn prime_spectrum(ring: &FiniteRing) -> Result<SpectrumResult> {
    let data = ring
        .spectrum_cache()
        .get_or_init(|| compute(ring))
        .clone()
        .map_err(ZdaError::Internal)?;
    Ok(SpectrumResult {
        primes: data
            .primes
            .into_iter()
            .map(|set| Ideal::from_verified(ring, set))
            .collect(),
        primitive_idempotents: data
            .primitive_idempotents
            .into_iter()
            .map(|h| ring.element(h).expect("handle in range"))
            .collect(),
        local_factor_sizes: data.local_factor_sizes,
    })
}

/// Nonzero idempotents with no nonzero idempotent strictly below them.
pub fn primitive_idempotents(ring: &FiniteRing) -> Vec<usize> {
    let z = ring.zero_ix();
    let idem: Vec<usize> = ring.idempotents().handles().filter(|&e| e != z).collect();
    idem.iter()
        .copied()
        .filter(|&e| idem.iter().all(|&f| f == e || ring.mul_ix(e, f) != f))
        .collect()
}

fn compute(ring: &FiniteRing) -> std::result::Result<SpectrumData, String> {
    let n = ring.size();
    let (z, one) = (ring.zero_ix(), ring.one_ix());
    let prims = primitive_idempotents(ring);

    for (i, &e) in prims.iter().enumerate() {
        for &f in &prims[i + 1..] {
            if ring.mul_ix(e, f) != z {
                return Err(format!(
                    "primitive idempotents {} and {} are not orthogonal in {}",
                    ring.name_ix(e),
                    ring.name_ix(f),
                    ring.label()
                ));
            }
        }
    }
    let total = prims.iter().fold(z, |acc, &e| ring.add_ix(acc, e));
    if total != one {
        return Err(format!("primitive idempotents of {} do not sum to one", ring.label()));
    }

    let mut primes = Vec::with_capacity(prims.len());
    let mut sizes = Vec::with_capacity(prims.len());
    for &e in &prims {
        let mut component = ElementSet::empty(ring);
        for x in 0..n {
            component.insert_handle(ring.mul_ix(e, x));
        }
        sizes.push(component.len());
        // e x is a unit of e A iff (e x) y = e for some y in A
        let mask = (0..n)
            .map(|x| {
                let ex = ring.mul_ix(e, x);
                !(0..n).any(|y| ring.mul_ix(ex, y) == e)
            })
            .collect();
        let prime = ElementSet::from_mask(ring, mask);
        if let Err(why) = Ideal::check_closure(ring, &prime) {
            return Err(format!("candidate prime for idempotent {} is not an ideal: {why}", ring.name_ix(e)));
        }
        if let Some((a, b)) = primality_witness(ring, &prime) {
            return Err(format!(
                "candidate prime for idempotent {} fails the primality test at ({}, {})",
                ring.name_ix(e),
                ring.name_ix(a),
                ring.name_ix(b)
            ));
        }
        primes.push(prime);
    }
    if sizes.iter().product::<usize>() != n {
        return Err(format!("local factor sizes of {} do not multiply to {n}", ring.label()));
    }
    Ok(SpectrumData { primes, primitive_idempotents: prims, local_factor_sizes: sizes })
}

/// For a candidate prime `p`: `None` if `p` is proper and `ab in p` forces
/// `a in p` or `b in p`; otherwise a witness pair (`(1, 1)` if `p` is the ring).
pub(crate) fn primality_witness(ring: &FiniteRing, p: &ElementSet) -> Option<(usize, usize)> {
    let one = ring.one_ix();
    if p.contains_handle(one) {
        return Some((one, one));
    }
    let outside: Vec<usize> = (0..ring.size()).filter(|&x| !p.contains_handle(x)).collect();
    for (i, &a) in outside.iter().enumerate() {
        for &b in &outside[i..] {
            if p.contains_handle(ring.mul_ix(a, b)) {
                return Some((a, b));
            }
        }
    }
    None
}
