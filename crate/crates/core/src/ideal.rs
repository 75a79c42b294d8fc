//! Ideals of finite rings: generation, sums, products, power chains and
//! lattice enumeration.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bitset::ElementSet;
use crate::ring::{Element, Ring};

/// Largest ring order accepted by [`enumerate_ideals`] unless overridden.
pub const DEFAULT_LATTICE_MAX_ORDER: usize = 1024;
/// Largest number of ideals a lattice may hold unless overridden.
pub const DEFAULT_LATTICE_MAX_IDEALS: usize = 4096;
/// Largest ring order accepted by the subset-scan oracle.
pub const BRUTEFORCE_MAX_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ideals belong to different rings")]
    RingMismatch,
    #[error("cannot combine a {0} ideal with a {1} ideal")]
    KindMismatch(IdealKind, IdealKind),
    #[error("ring order {order} exceeds the lattice cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("ideal lattice grew past {cap} ideals")]
    LatticeCap { cap: usize },
    #[error("subset is not a {0} ideal")]
    NotAnIdeal(IdealKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealKind {
    TwoSided,
    Left,
    Right,
}

impl IdealKind {
    pub const ALL: [IdealKind; 3] = [IdealKind::TwoSided, IdealKind::Left, IdealKind::Right];

    /// Closed under `a·x` for every ring element `a`.
    pub fn absorbs_left(self) -> bool {
        matches!(self, IdealKind::TwoSided | IdealKind::Left)
    }

    /// Closed under `x·a` for every ring element `a`.
    pub fn absorbs_right(self) -> bool {
        matches!(self, IdealKind::TwoSided | IdealKind::Right)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IdealKind::TwoSided => "two-sided",
            IdealKind::Left => "left",
            IdealKind::Right => "right",
        }
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdealKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "two-sided" | "two_sided" | "both" => Ok(IdealKind::TwoSided),
            "left" => Ok(IdealKind::Left),
            "right" => Ok(IdealKind::Right),
            other => Err(format!("unknown ideal kind {other:?}")),
        }
    }
}

/// An ideal of a specific ring, stored as a bitmask over element indices.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    mask: ElementSet,
    kind: IdealKind,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.mask == other.mask
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.kind, self.mask)
    }
}

impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Ideal", 2)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("elements", &self.elements())?;
        st.end()
    }
}

impl Ideal {
    pub fn zero(r: &Ring, kind: IdealKind) -> Ideal {
        Ideal { ring: r.clone(), mask: ElementSet::from_elements(r.order(), [0]), kind }
    }

    pub fn full(r: &Ring, kind: IdealKind) -> Ideal {
        Ideal { ring: r.clone(), mask: ElementSet::full(r.order()), kind }
    }

    /// Wraps `mask` after checking the ideal axioms for `kind`.
    pub fn from_mask(r: &Ring, mask: ElementSet, kind: IdealKind) -> Result<Ideal, IdealError> {
        let i = Ideal { ring: r.clone(), mask, kind };
        if i.mask.universe() == r.order() && i.satisfies_axioms() {
            Ok(i)
        } else {
            Err(IdealError::NotAnIdeal(kind))
        }
    }

    pub(crate) fn from_mask_unchecked(r: &Ring, mask: ElementSet, kind: IdealKind) -> Ideal {
        debug_assert_eq!(mask.universe(), r.order());
        Ideal { ring: r.clone(), mask, kind }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn mask(&self) -> &ElementSet {
        &self.mask
    }

    pub fn kind(&self) -> IdealKind {
        self.kind
    }

    /// Same set, viewed as an ideal of another kind. Fails if the axioms for that kind fail.
    pub fn with_kind(&self, kind: IdealKind) -> Result<Ideal, IdealError> {
        Ideal::from_mask(&self.ring, self.mask.clone(), kind)
    }

    pub fn elements(&self) -> Vec<Element> {
        self.mask.to_vec()
    }

    pub fn len(&self) -> usize {
        self.mask.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, a: Element) -> bool {
        self.mask.contains(a)
    }

    pub fn is_zero(&self) -> bool {
        self.mask.len() == 1
    }

    pub fn is_proper(&self) -> bool {
        self.mask.len() < self.ring.order()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_compatible(other)?;
        Ok(Ideal::from_mask_unchecked(&self.ring, self.mask.intersection(&other.mask), self.kind))
    }

    /// Direct check of the subgroup and absorption axioms.
    pub fn satisfies_axioms(&self) -> bool {
        let r = &self.ring;
        let members = self.elements();
        if !self.mask.contains(0) {
            return false;
        }
        members.iter().all(|&x| {
            self.mask.contains(r.neg(x))
                && members.iter().all(|&y| self.mask.contains(r.add(x, y)))
                && (!self.kind.absorbs_left() || r.elements().all(|a| self.mask.contains(r.mul(a, x))))
                && (!self.kind.absorbs_right() || r.elements().all(|a| self.mask.contains(r.mul(x, a))))
        })
    }

    fn check_compatible(&self, other: &Ideal) -> Result<(), IdealError> {
        if !self.ring.same_as(&other.ring) {
            return Err(IdealError::RingMismatch);
        }
        if self.kind != other.kind {
            return Err(IdealError::KindMismatch(self.kind, other.kind));
        }
        Ok(())
    }
}

/// Extends the additive subgroup `base` by `gens`.
pub(crate) fn additive_span(r: &Ring, mut base: ElementSet, gens: impl IntoIterator<Item = Element>) -> ElementSet {
    base.insert(0);
    for g in gens {
        if base.contains(g) {
            continue;
        }
        let members = base.to_vec();
        let mut shift = g;
        while !base.contains(shift) {
            for &s in &members {
                base.insert(r.add(s, shift));
            }
            shift = r.add(shift, g);
        }
    }
    base
}

/// Least ideal of `kind` containing `seed`, by fixed-point closure under sums,
/// negatives and absorption on the required sides.
pub fn ideal_generated_by(r: &Ring, seed: impl IntoIterator<Item = Element>, kind: IdealKind) -> Ideal {
    let mut set = ElementSet::from_elements(r.order(), [0]);
    let mut members = vec![0];
    let mut queue: Vec<Element> = seed.into_iter().collect();
    while let Some(x) = queue.pop() {
        if !set.insert(x) {
            continue;
        }
        members.push(x);
        queue.extend(members.iter().map(|&y| r.add(x, y)).filter(|&z| !set.contains(z)));
        queue.push(r.neg(x));
        for a in r.elements() {
            if kind.absorbs_left() && !set.contains(r.mul(a, x)) {
                queue.push(r.mul(a, x));
            }
            if kind.absorbs_right() && !set.contains(r.mul(x, a)) {
                queue.push(r.mul(x, a));
            }
        }
    }
    Ideal::from_mask_unchecked(r, set, kind)
}

pub fn principal_ideal(r: &Ring, a: Element, kind: IdealKind) -> Ideal {
    ideal_generated_by(r, [a], kind)
}

/// `i + j`: the additive closure of the union.
pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Result<Ideal, IdealError> {
    i.check_compatible(j)?;
    let mask = additive_span(&i.ring, i.mask.clone(), j.mask.iter());
    Ok(Ideal::from_mask_unchecked(&i.ring, mask, i.kind))
}

/// `i·j`: the additive closure of all products `x·y`.
pub fn ideal_product(i: &Ideal, j: &Ideal) -> Result<Ideal, IdealError> {
    i.check_compatible(j)?;
    let r = &i.ring;
    let mut products = ElementSet::empty(r.order());
    let right: Vec<_> = j.mask.iter().collect();
    for x in i.mask.iter() {
        for &y in &right {
            products.insert(r.mul(x, y));
        }
    }
    let mask = additive_span(r, ElementSet::empty(r.order()), products.iter());
    Ok(Ideal::from_mask_unchecked(r, mask, i.kind))
}

/// Descending chain `I ⊇ I² ⊇ …` up to the first repeated power.
#[derive(Debug, Clone)]
pub struct PowerChain {
    /// `powers[k]` is `I^(k+1)`; the last entry is the stable value.
    pub powers: Vec<Ideal>,
    /// First exponent at which the chain is constant.
    pub stable_index: u32,
}

impl PowerChain {
    pub fn base(&self) -> &Ideal {
        &self.powers[0]
    }

    pub fn stable_value(&self) -> &Ideal {
        self.powers.last().expect("chain is never empty")
    }

    /// `I^m` for `m >= 1`.
    pub fn power(&self, m: u32) -> &Ideal {
        assert!(m >= 1);
        &self.powers[(m as usize - 1).min(self.powers.len() - 1)]
    }

    /// Least `m` with `I^m ⊆ target`.
    pub fn first_power_within(&self, target: &ElementSet) -> Option<u32> {
        if !self.stable_value().mask.is_subset(target) {
            return None;
        }
        self.powers.iter().position(|p| p.mask.is_subset(target)).map(|k| k as u32 + 1)
    }
}

pub fn power_chain(i: &Ideal) -> PowerChain {
    let mut powers = vec![i.clone()];
    loop {
        let last = powers.last().unwrap();
        let next = ideal_product(last, i).expect("an ideal is compatible with itself");
        if next.mask == last.mask {
            break;
        }
        debug_assert!(next.mask.is_subset(&last.mask));
        powers.push(next);
    }
    let stable_index = powers.len() as u32;
    PowerChain { powers, stable_index }
}

/// Least `m` with `j^m ⊆ i`.
pub fn some_power_contained(j: &Ideal, i: &Ideal) -> Result<Option<u32>, IdealError> {
    if !j.ring.same_as(&i.ring) {
        return Err(IdealError::RingMismatch);
    }
    if j.is_subset(i) {
        return Ok(Some(1));
    }
    Ok(power_chain(j).first_power_within(&i.mask))
}

/// Least `n >= 1` with `a^n ∈ i`.
pub fn element_power_in(r: &Ring, a: Element, i: &Ideal) -> Option<u32> {
    r.least_power_where(a, |p| i.mask.contains(p))
}

/// Whether every element of `i` is nilpotent; otherwise the first element that is not.
pub fn is_nil(i: &Ideal) -> (bool, Option<Element>) {
    match i.mask.iter().find(|&a| i.ring.nilpotency_index(a).is_none()) {
        Some(a) => (false, Some(a)),
        None => (true, None),
    }
}

/// Least `m` with `i^m = 0`.
pub fn is_nilpotent_ideal(i: &Ideal) -> Option<u32> {
    let chain = power_chain(i);
    chain.stable_value().is_zero().then_some(chain.stable_index)
}

/// All ideals of one kind, in canonical order (size, then mask value).
#[derive(Clone, Debug)]
pub struct IdealLattice {
    ring: Ring,
    kind: IdealKind,
    ideals: Vec<Ideal>,
}

impl IdealLattice {
    fn from_masks(r: &Ring, kind: IdealKind, mut masks: Vec<ElementSet>) -> IdealLattice {
        masks.sort_by(|a, b| a.canonical_cmp(b));
        let ideals = masks.into_iter().map(|m| Ideal::from_mask_unchecked(r, m, kind)).collect();
        IdealLattice { ring: r.clone(), kind, ideals }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn kind(&self) -> IdealKind {
        self.kind
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Ideal> {
        self.ideals.iter()
    }

    pub fn position(&self, mask: &ElementSet) -> Option<usize> {
        self.ideals.iter().position(|i| &i.mask == mask)
    }

    pub fn masks(&self) -> Vec<ElementSet> {
        self.ideals.iter().map(|i| i.mask.clone()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeCaps {
    pub max_order: usize,
    pub max_ideals: usize,
}

impl Default for LatticeCaps {
    fn default() -> Self {
        LatticeCaps { max_order: DEFAULT_LATTICE_MAX_ORDER, max_ideals: DEFAULT_LATTICE_MAX_IDEALS }
    }
}

pub fn enumerate_ideals(r: &Ring, kind: IdealKind) -> Result<IdealLattice, IdealError> {
    enumerate_ideals_with(r, kind, LatticeCaps::default())
}

/// Principal ideals of every element, closed under pairwise sums.
pub fn enumerate_ideals_with(r: &Ring, kind: IdealKind, caps: LatticeCaps) -> Result<IdealLattice, IdealError> {
    if r.order() > caps.max_order {
        return Err(IdealError::OrderCap { order: r.order(), cap: caps.max_order });
    }
    let mut seen = HashSet::new();
    let mut masks = Vec::new();
    for a in r.elements() {
        let p = principal_ideal(r, a, kind).mask;
        if seen.insert(p.clone()) {
            masks.push(p);
        }
    }
    let mut next = 0;
    while next < masks.len() {
        for j in 0..next {
            let sum = additive_span(r, masks[next].clone(), masks[j].iter());
            if seen.insert(sum.clone()) {
                masks.push(sum);
                if masks.len() > caps.max_ideals {
                    return Err(IdealError::LatticeCap { cap: caps.max_ideals });
                }
            }
        }
        next += 1;
    }
    Ok(IdealLattice::from_masks(r, kind, masks))
}

/// Independent oracle: tests every subset containing 0 against the axioms.
pub fn enumerate_ideals_bruteforce(r: &Ring, kind: IdealKind) -> Result<IdealLattice, IdealError> {
    let n = r.order();
    if n > BRUTEFORCE_MAX_ORDER {
        return Err(IdealError::OrderCap { order: n, cap: BRUTEFORCE_MAX_ORDER });
    }
    let bit = |e: Element| 1u32 << e;
    let closed = |m: u32| {
        let members: Vec<_> = (0..n).filter(|&x| m & bit(x) != 0).collect();
        members.iter().all(|&x| {
            m & bit(r.neg(x)) != 0
                && members.iter().all(|&y| m & bit(r.add(x, y)) != 0)
                && (0..n).all(|a| {
                    (!kind.absorbs_left() || m & bit(r.mul(a, x)) != 0)
                        && (!kind.absorbs_right() || m & bit(r.mul(x, a)) != 0)
                })
        })
    };
    let masks =
        (0u32..1 << n).filter(|m| m & 1 == 1 && closed(*m)).map(|m| ElementSet::from_u64(n, m as u64)).collect();
    Ok(IdealLattice::from_masks(r, kind, masks))
}
