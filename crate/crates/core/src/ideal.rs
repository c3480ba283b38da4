//! Ideals of finite rings.

use std::fmt;

use crate::error::{Result, ZdaError};
use crate::ring::{Element, ElementSet, FiniteRing};
use crate::spectrum::primality_witness;

/// Bound on the carrier size accepted by [`all_ideals`].
pub const ALL_IDEALS_MAX: usize = 1024;

/// An ideal, carrying a handle to its ring.
#[derive(Clone)]
pub struct Ideal {
    ring: FiniteRing,
    members: ElementSet,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({} in {})", self, self.ring.label())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members.names(&self.ring).join(", "))
    }
}

impl Ideal {
    /// Checks that `members` is an ideal of `ring`.
    pub fn from_set(ring: &FiniteRing, members: ElementSet) -> Result<Self> {
        if members.ring_id() != ring.id() {
            return Err(ZdaError::CrossRing);
        }
        Self::check_closure(ring, &members).map_err(ZdaError::NotAnIdeal)?;
        Ok(Ideal { ring: ring.clone(), members })
    }

    pub(crate) fn from_verified(ring: &FiniteRing, members: ElementSet) -> Self {
        debug_assert!(Self::check_closure(ring, &members).is_ok());
        Ideal { ring: ring.clone(), members }
    }

    pub(crate) fn check_closure(ring: &FiniteRing, set: &ElementSet) -> std::result::Result<(), String> {
        if !set.contains_handle(ring.zero_ix()) {
            return Err("does not contain zero".into());
        }
        let members: Vec<usize> = set.handles().collect();
        for &a in &members {
            if !set.contains_handle(ring.neg_ix(a)) {
                return Err(format!("not closed under negation at {}", ring.name_ix(a)));
            }
            for &b in &members {
                if !set.contains_handle(ring.add_ix(a, b)) {
                    return Err(format!(
                        "not closed under addition at ({}, {})",
                        ring.name_ix(a),
                        ring.name_ix(b)
                    ));
                }
            }
            for r in 0..ring.size() {
                if !set.contains_handle(ring.mul_ix(r, a)) {
                    return Err(format!(
                        "not closed under multiplication at ({}, {})",
                        ring.name_ix(r),
                        ring.name_ix(a)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn zero_ideal(ring: &FiniteRing) -> Self {
        Ideal { ring: ring.clone(), members: ElementSet::from_handles(ring, [ring.zero_ix()]) }
    }

    pub fn unit_ideal(ring: &FiniteRing) -> Self {
        Ideal { ring: ring.clone(), members: ElementSet::empty(ring).complement() }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, e: Element) -> bool {
        self.members.contains(e)
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_proper(&self) -> bool {
        !self.members.contains_handle(self.ring.one_ix())
    }

    pub fn is_prime(&self) -> bool {
        primality_witness(&self.ring, &self.members).is_none()
    }

    /// Contains a regular element. Never true for a proper ideal of a finite
    /// ring, since there regular elements are units.
    pub fn is_regular_ideal(&self) -> bool {
        let regular = !self.members.intersection(&self.ring.regular_elements()).is_empty();
        assert!(
            !regular || !self.is_proper(),
            "proper ideal {self} of finite ring {} contains a regular element",
            self.ring.label()
        );
        regular
    }

    pub fn contained_in_nil(&self) -> bool {
        self.members.is_subset(self.ring.nilpotents())
    }

    pub fn intersects_nil_trivially(&self) -> bool {
        self.members.intersection(self.ring.nilpotents()).len() == 1
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Whether `I * I = 0`.
    pub fn squares_to_zero(&self) -> bool {
        let z = self.ring.zero_ix();
        let m: Vec<usize> = self.members.handles().collect();
        m.iter().all(|&a| m.iter().all(|&b| self.ring.mul_ix(a, b) == z))
    }

    /// `I + J`.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(ZdaError::CrossRing);
        }
        let mut set = ElementSet::empty(&self.ring);
        for a in self.members.handles() {
            for b in other.members.handles() {
                set.insert_handle(self.ring.add_ix(a, b));
            }
        }
        Ok(Ideal { ring: self.ring.clone(), members: set })
    }
}

/// Smallest ideal containing `gens`.
pub fn ideal_generated(ring: &FiniteRing, gens: &[Element]) -> Result<Ideal> {
    let handles = gens.iter().map(|&g| ring.owns(g)).collect::<Result<Vec<_>>>()?;
    Ok(generated_ix(ring, &handles))
}

pub(crate) fn generated_ix(ring: &FiniteRing, gens: &[usize]) -> Ideal {
    // all multiples r*g; finite sums of these form the ideal
    let mut multiples = ElementSet::empty(ring);
    for &g in gens {
        for r in 0..ring.size() {
            multiples.insert_handle(ring.mul_ix(r, g));
        }
    }
    let steps: Vec<usize> = multiples.handles().filter(|&m| m != ring.zero_ix()).collect();
    let mut members = ElementSet::from_handles(ring, [ring.zero_ix()]);
    let mut queue = vec![ring.zero_ix()];
    while let Some(x) = queue.pop() {
        for &s in &steps {
            let y = ring.add_ix(x, s);
            if members.insert_handle(y) {
                queue.push(y);
            }
        }
    }
    Ideal { ring: ring.clone(), members }
}

fn principal(ring: &FiniteRing, g: usize) -> Ideal {
    // R g is already closed under addition
    let mut members = ElementSet::empty(ring);
    for r in 0..ring.size() {
        members.insert_handle(ring.mul_ix(r, g));
    }
    Ideal { ring: ring.clone(), members }
}

/// Every ideal of `ring`: principal ideals closed under pairwise sums.
/// Sorted by size, then by member handles.
pub fn all_ideals(ring: &FiniteRing) -> Result<Vec<Ideal>> {
    if ring.size() > ALL_IDEALS_MAX {
        return Err(ZdaError::ResourceBound(format!(
            "ideal enumeration is limited to {ALL_IDEALS_MAX} elements, {} has {}",
            ring.label(),
            ring.size()
        )));
    }
    let mut found: Vec<Ideal> = Vec::new();
    let push = |found: &mut Vec<Ideal>, i: Ideal| {
        if !found.contains(&i) {
            found.push(i);
            true
        } else {
            false
        }
    };
    for g in 0..ring.size() {
        push(&mut found, principal(ring, g));
    }
    let mut frontier = 0;
    loop {
        let current = found.len();
        let mut added = false;
        for i in 0..current {
            for j in frontier.max(i + 1)..current {
                let s = found[i].sum(&found[j])?;
                added |= push(&mut found, s);
            }
        }
        if !added {
            break;
        }
        frontier = current;
    }
    found.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.members.handles().cmp(b.members.handles()))
    });
    Ok(found)
}

/// Ideals that are neither zero nor the whole ring.
pub fn nonzero_proper_ideals(ring: &FiniteRing) -> Result<Vec<Ideal>> {
    Ok(all_ideals(ring)?
        .into_iter()
        .filter(|i| !i.is_zero() && i.is_proper())
        .collect())
}
