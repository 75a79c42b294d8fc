//! Decides the nilary-family ideal predicates by exhaustive quantification.
//!
//! Element-wise predicates (completely prime, completely nilary, ...) scan all
//! element pairs. Ideal-wise predicates (prime, nilary, right primary, ...)
//! scan pairs from the cached ideal lattice, using power chains to decide
//! "some power lies in `I`". Every negative verdict carries the first
//! counter-example in canonical order: lattice order for ideals, index order
//! for elements.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bitset::ElementSet;
use crate::ideal::{
    additive_span, enumerate_ideals_with, is_nil, power_chain, principal_ideal, Ideal, IdealError, IdealKind,
    IdealLattice, LatticeCaps,
};
use crate::ring::{characteristic, Characteristic, Element, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("one-sided characterisation requires a ring with unity")]
    UnityRequired,
    #[error("predicates are defined for two-sided ideals, got a {0} ideal")]
    NotTwoSided(IdealKind),
    #[error("ideal does not belong to this ring")]
    RingMismatch,
}

macro_rules! predicates {
    ($($variant:ident => $name:literal, $abbrev:literal;)*) => {
        /// The fixed predicate registry, in report order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Predicate { $($variant,)* }

        impl Predicate {
            pub const ALL: &'static [Predicate] = &[$(Predicate::$variant,)*];

            pub fn name(self) -> &'static str {
                match self { $(Predicate::$variant => $name,)* }
            }

            /// Column header used by text tables.
            pub fn abbrev(self) -> &'static str {
                match self { $(Predicate::$variant => $abbrev,)* }
            }
        }

        impl FromStr for Predicate {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($name => Ok(Predicate::$variant),)*
                    other => Err(format!("unknown predicate {other:?}")),
                }
            }
        }
    };
}

predicates! {
    CompletelyPrime => "completely_prime", "cP";
    CompletelySemiprime => "completely_semiprime", "cSP";
    CompletelyNilary => "completely_nilary", "cN";
    Prime => "prime", "P";
    Semiprime => "semiprime", "SP";
    Nilary => "nilary", "N";
    PNilary => "p_nilary", "pN";
    RightPrimary => "right_primary", "RP";
    LeftPrimary => "left_primary", "LP";
    PRightPrimary => "p_right_primary", "pRP";
    PLeftPrimary => "p_left_primary", "pLP";
    CompletelyRightPrimary => "completely_right_primary", "cRP";
    CompletelyLeftPrimary => "completely_left_primary", "cLP";
    WeaklyNilary => "weakly_nilary", "wN";
    WeaklyPNilary => "weakly_p_nilary", "wpN";
    WeaklyNilaryRight => "weakly_nilary_right", "wNr";
    WeaklyNilaryLeft => "weakly_nilary_left", "wNl";
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Predicate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Evidence attached to a verdict. Exponents are least witnesses; `None`
/// means no power works.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    None,
    Element {
        a: Element,
        exponent: Option<u32>,
    },
    ElementPair {
        a: Element,
        b: Element,
        n: Option<u32>,
        m: Option<u32>,
    },
    IdealPair {
        kind: IdealKind,
        j: Vec<Element>,
        k: Vec<Element>,
        /// Generators when the quantifier ranges over principal ideals.
        j_generator: Option<Element>,
        k_generator: Option<Element>,
        m: Option<u32>,
        n: Option<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Witness,
    /// The predicate does not apply (improper ideal for weakly-* predicates,
    /// or a non-unital ring for the one-sided forms).
    pub na: bool,
}

impl Verdict {
    fn yes() -> Verdict {
        Verdict { holds: true, witness: Witness::None, na: false }
    }

    fn no(witness: Witness) -> Verdict {
        Verdict { holds: false, witness, na: false }
    }

    fn not_applicable() -> Verdict {
        Verdict { holds: false, witness: Witness::None, na: true }
    }

    fn from_counterexample(found: Option<Witness>) -> Verdict {
        found.map_or_else(Verdict::yes, Verdict::no)
    }
}

/// Lattice of one kind with everything the quantifiers need precomputed.
struct LatticeData {
    lattice: IdealLattice,
    /// `chains[j][e-1]` is the mask of `J^e`; the last entry is the stable value.
    chains: Vec<Vec<ElementSet>>,
    /// `products[j * len + k]` is `J·K`.
    products: Vec<ElementSet>,
    /// Distinct principal ideals as (lattice index, least generator), in lattice order.
    principal: Vec<(usize, Element)>,
}

impl LatticeData {
    fn build(r: &Ring, kind: IdealKind, caps: LatticeCaps) -> Result<LatticeData, IdealError> {
        let lattice = enumerate_ideals_with(r, kind, caps)?;
        let chains =
            lattice.iter().map(|i| power_chain(i).powers.into_iter().map(|p| p.mask().clone()).collect()).collect();
        let ideals = lattice.ideals();
        let mut products = Vec::with_capacity(ideals.len() * ideals.len());
        for j in ideals {
            let left: Vec<_> = j.mask().iter().collect();
            for k in ideals {
                let mut raw = ElementSet::empty(r.order());
                for &x in &left {
                    for y in k.mask().iter() {
                        raw.insert(r.mul(x, y));
                    }
                }
                products.push(additive_span(r, ElementSet::empty(r.order()), raw.iter()));
            }
        }
        let mut principal: Vec<(usize, Element)> = Vec::new();
        for a in r.elements() {
            let p = principal_ideal(r, a, kind);
            let idx = lattice.position(p.mask()).expect("principal ideals are in the lattice");
            if !principal.iter().any(|&(i, _)| i == idx) {
                principal.push((idx, a));
            }
        }
        principal.sort_unstable();
        Ok(LatticeData { lattice, chains, products, principal })
    }

    fn len(&self) -> usize {
        self.lattice.len()
    }

    fn product(&self, j: usize, k: usize) -> &ElementSet {
        &self.products[j * self.len() + k]
    }

    fn mask(&self, j: usize) -> &ElementSet {
        self.lattice.ideals()[j].mask()
    }

    /// Least `e` with `J^e ⊆ target`.
    fn power_within(&self, j: usize, target: &ElementSet) -> Option<u32> {
        let chain = &self.chains[j];
        if !chain.last().unwrap().is_subset(target) {
            return None;
        }
        chain.iter().position(|p| p.is_subset(target)).map(|e| e as u32 + 1)
    }

    /// Lattice indices paired with their generator when restricted to principal ideals.
    fn domain(&self, principal: bool) -> Vec<(usize, Option<Element>)> {
        if principal {
            self.principal.iter().map(|&(i, g)| (i, Some(g))).collect()
        } else {
            (0..self.len()).map(|i| (i, None)).collect()
        }
    }

    fn pair_witness(
        &self,
        (j, jg): (usize, Option<Element>),
        (k, kg): (usize, Option<Element>),
        m: Option<u32>,
        n: Option<u32>,
    ) -> Witness {
        Witness::IdealPair {
            kind: self.lattice.kind(),
            j: self.mask(j).to_vec(),
            k: self.mask(k).to_vec(),
            j_generator: jg,
            k_generator: kg,
            m,
            n,
        }
    }
}

/// Per-ring cache of lattices, shared by every predicate evaluation on that ring.
pub struct Classifier {
    ring: Ring,
    caps: LatticeCaps,
    lattices: [OnceLock<Result<LatticeData, IdealError>>; 3],
}

fn slot(kind: IdealKind) -> usize {
    match kind {
        IdealKind::TwoSided => 0,
        IdealKind::Left => 1,
        IdealKind::Right => 2,
    }
}

/// Which ideal-pair implication to check: `JK ⊆ I ⟹ left(J) ∨ right(K)`.
#[derive(Clone, Copy)]
enum Conclusion {
    /// `J ⊆ I`
    Contained,
    /// some power of the ideal lies in `I`
    SomePower,
}

impl Classifier {
    pub fn new(ring: &Ring) -> Classifier {
        Classifier::with_caps(ring, LatticeCaps::default())
    }

    pub fn with_caps(ring: &Ring, caps: LatticeCaps) -> Classifier {
        Classifier { ring: ring.clone(), caps, lattices: Default::default() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn data(&self, kind: IdealKind) -> Result<&LatticeData, IdealError> {
        self.lattices[slot(kind)]
            .get_or_init(|| LatticeData::build(&self.ring, kind, self.caps))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn lattice(&self, kind: IdealKind) -> Result<&IdealLattice, IdealError> {
        Ok(&self.data(kind)?.lattice)
    }

    /// Principal ideals of `kind`, one per distinct ideal, with their least generator.
    pub fn principal_ideals(&self, kind: IdealKind) -> Result<Vec<(Element, &Ideal)>, IdealError> {
        let data = self.data(kind)?;
        Ok(data.principal.iter().map(|&(i, g)| (g, &data.lattice.ideals()[i])).collect())
    }

    fn check(&self, i: &Ideal) -> Result<(), ClassifyError> {
        if i.kind() != IdealKind::TwoSided {
            return Err(ClassifyError::NotTwoSided(i.kind()));
        }
        if !self.ring.same_as(i.ring()) {
            return Err(ClassifyError::RingMismatch);
        }
        Ok(())
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal::zero(&self.ring, IdealKind::TwoSided)
    }

    /// Least `n` with `a^n ∈ i`, for every element.
    fn power_table(&self, i: &Ideal) -> Vec<Option<u32>> {
        self.ring.elements().map(|a| self.ring.least_power_where(a, |p| i.contains(p))).collect()
    }

    /// First pair `(a, b)` with `ab ∈ i` failing `accept`.
    fn scan_elements(
        &self,
        i: &Ideal,
        accept: impl Fn(Element, Element) -> bool,
        witness: impl Fn(Element, Element) -> Witness,
    ) -> Option<Witness> {
        let r = &self.ring;
        r.elements()
            .flat_map(|a| r.elements().map(move |b| (a, b)))
            .find(|&(a, b)| i.contains(r.mul(a, b)) && !accept(a, b))
            .map(|(a, b)| witness(a, b))
    }

    pub fn is_completely_prime(&self, i: &Ideal) -> Result<Verdict, ClassifyError> {
        self.check(i)?;
        if !i.is_proper() {
            return Ok(Verdict::no(Witness::None));
        }
        let found = self.scan_elements(
            i,
            |a, b| i.contains(a) || i.contains(b),
            |a, b| Witness::ElementPair { a, b, n: None, m: None },
        );
        Ok(Verdict::from_counterexample(found))
    }

    pub fn is_completely_semiprime(&self, i: &Ideal) -> Result<Verdict, ClassifyError> {
        self.check(i)?;
        let powers = self.power_table(i);
        let found = self
            .ring
            .elements()
            .find(|&a| powers[a].is_some() && !i.contains(a))
            .map(|a| Witness::Element { a, exponent: powers[a] });
        Ok(Verdict::from_counterexample(found))
    }

    pub fn is_completely_nilary(&self, i: &Ideal) -> Result<Verdict, ClassifyError> {
        self.check(i)?;
        let powers = self.power_table(i);
        let found = self.scan_elements(
            i,
            |a, b| powers[a].is_some() || powers[b].is_some(),
            |a, b| Witness::ElementPair { a, b, n: None, m: None },
        );
        Ok(Verdict::from_counterexample(found))
    }

    /// `ab ∈ I ⟹ a ∈ I or b^n ∈ I` (right); `a^n ∈ I or b ∈ I` (left).
    pub fn is_completely_primary(&self, i: &Ideal, side: IdealKind) -> Result<Verdict, ClassifyError> {
        self.check(i)?;
        let powers = self.power_table(i);
        let found = match side {
            IdealKind::Left => self.scan_elements(
                i,
                |a, b| powers[a].is_some() || i.contains(b),
                |a, b| Witness::ElementPair { a, b, n: None, m: None },
            ),
            _ => self.scan_elements(
                i,
                |a, b| i.contains(a) || powers[b].is_some(),
                |a, b| Witness::ElementPair { a, b, n: None, m: None },
            ),
        };
        Ok(Verdict::from_counterexample(found))
    }

    pub fn is_completely_right_primary(&self, i: &Ideal) -> Result<Verdict, ClassifyError> {
        self.is_completely_primary(i, IdealKind::Right)
    }

    pub fn is_completely_left_primary(&self, i: &Ideal) -> Result<Verdict, ClassifyError> {
        self.is_completely_primary(i, IdealKind::Left)
    }

    /// Scans `JK ⊆ target` over the chosen domain and checks `lhs(J) ∨ rhs(K)`.
    /// With `weak`, pairs with `JK = 0` are skipped.
    fn scan_ideal_pairs(
        data: &LatticeData,
        target: &ElementSet,
        principal: bool,
        weak: bool,
        lhs: Conclusion,
        rhs: Conclusion,
    ) -> Option<Witness> {
        let holds = |idx: usize, c: Conclusion| match c {
            Conclusion::Contained => data.mask(idx).is_subset(target),
            Conclusion::SomePower => data.power_within(idx, target).is_some(),
        };
        let domain = data.domain(principal);
        for &j in &domain {
            for &k in &domain {
                let prod = data.product(j.0, k.0);
                if !prod.is_subset(target) || (weak && prod.len() == 1) {
                    continue;
                }
                if !holds(j.0, lhs) && !holds(k.0, rhs) {
                    return Some(data.pair_witness(j, k, None, None));
                }
            }
        }
        None
    }

    fn ideal_implication(
        &self,
        i: &Ideal,
        principal: bool,
        lhs: Conclusion,
        rhs: Conclusion,
    ) -> Result<Verdict, ClassifyError> {
        self.check(i)?;
        let data = self.data(IdealKind::TwoSided)?;
        let found = Self::scan_ideal_pairs(data, i.mask(), principal, false, lhs, rhs);
        Ok(Verdict::from_counterexample(found))
    }

    pub fn is_prime_ideal(&self, i: &Ideal) -> Result<Verdict, ClassifyError> {
        self.check(i)?;
        if !i.is_proper() {
            return Ok(Verdict::no(Witness::None));
        }
        self.ideal_implication(i, false, Conclusion::Contained, Conclusion::Contained)
    }

    pub fn is_semiprime_ideal(&self, i: &Ideal) -> Result<Verdict, ClassifyError> {
        self.check(i)?;
        let data = self.data(IdealKind::TwoSided)?;
        let found = (0..data.len())
            .find(|&j| data.product(j, j).is_subset(i.mask()) && !data.mask(j).is_subset(i.mask()))
            .map(|j| data.pair_witness((j, None), (j, None), None, None));
        Ok(Verdict::from_counterexample(found))
    }

    pub fn is_nilary(&self, i: &Ideal) -> Result<Verdict, ClassifyError> {
        self.ideal_implication(i, false, Conclusion::SomePower, Conclusion::SomePower)
    }

    pub fn is_p_nilary(&self, i: &Ideal) -> Result<Verdict, ClassifyError> {
        self.ideal_implication(i, true, Conclusion::SomePower, Conclusion::SomePower)
    }

    pub fn is_right_primary(&self, i: &Ideal, principal: bool) -> Result<Verdict, ClassifyError> {
        self.ideal_implication(i, principal, Conclusion::Contained, Conclusion::SomePower)
    }

    pub fn is_left_primary(&self, i: &Ideal, principal: bool) -> Result<Verdict, ClassifyError> {
        self.ideal_implication(i, principal, Conclusion::SomePower, Conclusion::Contained)
    }

    fn weakly(&self, i: &Ideal, kind: IdealKind, principal: bool) -> Result<Verdict, ClassifyError> {
        self.check(i)?;
        if !i.is_proper() {
            return Ok(Verdict::not_applicable());
        }
        let data = self.data(kind)?;
        let found =
            Self::scan_ideal_pairs(data, i.mask(), principal, true, Conclusion::SomePower, Conclusion::SomePower);
        Ok(Verdict::from_counterexample(found))
    }

    pub fn is_weakly_nilary(&self, i: &Ideal) -> Result<Verdict, ClassifyError> {
        self.weakly(i, IdealKind::TwoSided, false)
    }

    pub fn is_weakly_p_nilary(&self, i: &Ideal) -> Result<Verdict, ClassifyError> {
        self.weakly(i, IdealKind::TwoSided, true)
    }

    /// Weakly (p-)nilary with the quantifier over one-sided (principal) ideals of `side`.
    pub fn is_weakly_nilary_onesided(
        &self,
        l: &Ideal,
        side: IdealKind,
        principal: bool,
    ) -> Result<Verdict, ClassifyError> {
        self.check(l)?;
        if self.ring.one().is_none() {
            return Err(ClassifyError::UnityRequired);
        }
        self.weakly(l, side, principal)
    }

    pub fn verdict(&self, i: &Ideal, p: Predicate) -> Result<Verdict, ClassifyError> {
        use Predicate::*;
        match p {
            CompletelyPrime => self.is_completely_prime(i),
            CompletelySemiprime => self.is_completely_semiprime(i),
            CompletelyNilary => self.is_completely_nilary(i),
            Prime => self.is_prime_ideal(i),
            Semiprime => self.is_semiprime_ideal(i),
            Nilary => self.is_nilary(i),
            PNilary => self.is_p_nilary(i),
            RightPrimary => self.is_right_primary(i, false),
            LeftPrimary => self.is_left_primary(i, false),
            PRightPrimary => self.is_right_primary(i, true),
            PLeftPrimary => self.is_left_primary(i, true),
            CompletelyRightPrimary => self.is_completely_right_primary(i),
            CompletelyLeftPrimary => self.is_completely_left_primary(i),
            WeaklyNilary => self.is_weakly_nilary(i),
            WeaklyPNilary => self.is_weakly_p_nilary(i),
            WeaklyNilaryRight | WeaklyNilaryLeft => {
                let side = if p == WeaklyNilaryRight { IdealKind::Right } else { IdealKind::Left };
                match self.is_weakly_nilary_onesided(i, side, false) {
                    Err(ClassifyError::UnityRequired) => Ok(Verdict::not_applicable()),
                    other => other,
                }
            }
        }
    }

    pub fn ring_facts(&self) -> RingFacts {
        let r = &self.ring;
        RingFacts {
            order: r.order(),
            commutative: r.is_commutative(),
            unital: r.one().is_some(),
            nil: is_nil(&Ideal::full(r, IdealKind::TwoSided)).0,
        }
    }

    pub fn report(&self, i: &Ideal) -> Result<PropertyReport, ClassifyError> {
        let verdicts =
            Predicate::ALL.iter().map(|&p| Ok((p, self.verdict(i, p)?))).collect::<Result<Vec<_>, ClassifyError>>()?;
        Ok(PropertyReport {
            ring: self.ring.label().to_string(),
            ideal: i.elements(),
            proper: i.is_proper(),
            verdicts: Verdicts(verdicts),
            char: characteristic(&self.ring).ok(),
            facts: self.ring_facts(),
        })
    }

    pub fn classify_ring(&self) -> Result<PropertyReport, ClassifyError> {
        self.report(&self.zero_ideal())
    }

    /// One report per two-sided ideal, in lattice order.
    pub fn full_report(&self) -> Result<Vec<PropertyReport>, ClassifyError> {
        let lattice = self.lattice(IdealKind::TwoSided)?;
        lattice.iter().map(|i| self.report(i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingFacts {
    pub order: usize,
    pub commutative: bool,
    pub unital: bool,
    pub nil: bool,
}

/// Verdicts in registry order; serialised as a JSON object keyed by predicate name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdicts(pub Vec<(Predicate, Verdict)>);

impl Verdicts {
    pub fn get(&self, p: Predicate) -> &Verdict {
        &self.0.iter().find(|(q, _)| *q == p).expect("every registered predicate is present").1
    }
}

impl Serialize for Verdicts {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (p, v) in &self.0 {
            map.serialize_entry(p.name(), v)?;
        }
        map.end()
    }
}

/// Full predicate profile of one ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub ring: String,
    pub ideal: Vec<Element>,
    pub proper: bool,
    pub verdicts: Verdicts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub char: Option<Characteristic>,
    pub facts: RingFacts,
}

impl PropertyReport {
    pub fn holds(&self, p: Predicate) -> bool {
        self.verdicts.get(p).holds
    }
}

/// Profile of the zero ideal of `r`.
pub fn classify_ring(r: &Ring) -> Result<PropertyReport, ClassifyError> {
    Classifier::new(r).classify_ring()
}

pub fn full_report(r: &Ring) -> Result<Vec<PropertyReport>, ClassifyError> {
    Classifier::new(r).full_report()
}

pub fn is_completely_nilary(i: &Ideal) -> Result<Verdict, ClassifyError> {
    Classifier::new(i.ring()).is_completely_nilary(i)
}

pub fn is_weakly_nilary_onesided(l: &Ideal, side: IdealKind, principal: bool) -> Result<Verdict, ClassifyError> {
    Classifier::new(l.ring()).is_weakly_nilary_onesided(l, side, principal)
}

/// Supplies verdicts to the theorem harness. The default forwards to the
/// classifier; tests substitute faulty judges.
pub trait Judge: Sync {
    fn verdict(&self, cx: &Classifier, i: &Ideal, p: Predicate) -> Result<Verdict, ClassifyError>;
}

/// Exhaustive classification.
pub struct Exhaustive;

impl Judge for Exhaustive {
    fn verdict(&self, cx: &Classifier, i: &Ideal, p: Predicate) -> Result<Verdict, ClassifyError> {
        cx.verdict(i, p)
    }
}
