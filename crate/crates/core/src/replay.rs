//! Independent re-verification of verdicts.
//!
//! Everything here works from the raw addition and multiplication tables with
//! plain `Vec<bool>` sets and naive fixed-point loops. It deliberately shares no
//! code with [`crate::ideal`] or the classifier's quantifier loops, so a replayed
//! witness is an independent check of the verdict that produced it.

use std::sync::OnceLock;

use thiserror::Error;

use crate::classifier::{Predicate, Verdict, Witness};
use crate::ideal::IdealKind;
use crate::ring::{Element, Ring};

/// Rings up to this order also get true verdicts re-derived by subset scan.
pub const RECHECK_MAX_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{predicate} on {ring} {ideal:?}: {reason}")]
pub struct ReplayFailure {
    pub ring: String,
    pub ideal: Vec<Element>,
    pub predicate: Predicate,
    pub reason: String,
}

type Set = Vec<bool>;

fn members(s: &Set) -> Vec<Element> {
    s.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

fn subset(a: &Set, b: &Set) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

fn from_list(n: usize, list: &[Element]) -> Option<Set> {
    let mut s = vec![false; n];
    for &e in list {
        *s.get_mut(e)? = true;
    }
    Some(s)
}

/// Naive replay engine for one ring.
pub struct Replayer {
    ring: Ring,
    lattices: [OnceLock<Vec<Set>>; 3],
}

impl Replayer {
    pub fn new(ring: &Ring) -> Replayer {
        Replayer { ring: ring.clone(), lattices: Default::default() }
    }

    fn n(&self) -> usize {
        self.ring.order()
    }

    /// Smallest set containing `gens` and 0 that is closed under `+`.
    fn span(&self, gens: &Set) -> Set {
        let r = &self.ring;
        let mut s = gens.clone();
        s[0] = true;
        loop {
            let cur = members(&s);
            let mut changed = false;
            for &x in &cur {
                for &y in &cur {
                    let z = r.add(x, y);
                    if !s[z] {
                        s[z] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return s;
            }
        }
    }

    fn product(&self, j: &Set, k: &Set) -> Set {
        let mut raw = vec![false; self.n()];
        for x in members(j) {
            for y in members(k) {
                raw[self.ring.mul(x, y)] = true;
            }
        }
        self.span(&raw)
    }

    fn is_ideal(&self, s: &Set, kind: IdealKind) -> bool {
        let r = &self.ring;
        let m = members(s);
        if !s[0] {
            return false;
        }
        for &x in &m {
            if !s[r.neg(x)] || m.iter().any(|&y| !s[r.add(x, y)]) {
                return false;
            }
            for a in 0..self.n() {
                let left = matches!(kind, IdealKind::TwoSided | IdealKind::Left);
                let right = matches!(kind, IdealKind::TwoSided | IdealKind::Right);
                if (left && !s[r.mul(a, x)]) || (right && !s[r.mul(x, a)]) {
                    return false;
                }
            }
        }
        true
    }

    fn principal(&self, a: Element, kind: IdealKind) -> Set {
        let r = &self.ring;
        let mut s = vec![false; self.n()];
        s[0] = true;
        s[a] = true;
        loop {
            let cur = members(&s);
            let mut next = s.clone();
            for &x in &cur {
                next[r.neg(x)] = true;
                for &y in &cur {
                    next[r.add(x, y)] = true;
                }
                for b in 0..self.n() {
                    if matches!(kind, IdealKind::TwoSided | IdealKind::Left) {
                        next[r.mul(b, x)] = true;
                    }
                    if matches!(kind, IdealKind::TwoSided | IdealKind::Right) {
                        next[r.mul(x, b)] = true;
                    }
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// Least `e` in `1..=order+1` with `J^e ⊆ target`.
    fn set_power_in(&self, j: &Set, target: &Set) -> Option<u32> {
        let mut p = j.clone();
        for e in 1..=self.n() as u32 + 1 {
            if subset(&p, target) {
                return Some(e);
            }
            p = self.product(&p, j);
        }
        None
    }

    /// Least `e` in `1..=order` with `a^e ∈ target`; later powers repeat earlier ones.
    fn element_power_in(&self, a: Element, target: &Set) -> Option<u32> {
        let mut p = a;
        for e in 1..=self.n() as u32 {
            if target[p] {
                return Some(e);
            }
            p = self.ring.mul(p, a);
        }
        None
    }

    /// Every ideal of `kind`, by scanning all subsets. Only for small rings.
    fn lattice(&self, kind: IdealKind) -> &[Set] {
        let slot = match kind {
            IdealKind::TwoSided => 0,
            IdealKind::Left => 1,
            IdealKind::Right => 2,
        };
        self.lattices[slot].get_or_init(|| {
            let n = self.n();
            assert!(n <= RECHECK_MAX_ORDER);
            (0u32..1 << n)
                .filter(|m| m & 1 == 1)
                .map(|m| (0..n).map(|i| m >> i & 1 == 1).collect::<Set>())
                .filter(|s| self.is_ideal(s, kind))
                .collect()
        })
    }

    fn quantifier_domain(&self, kind: IdealKind, principal: bool) -> Vec<Set> {
        if principal {
            let mut out: Vec<Set> = Vec::new();
            for a in 0..self.n() {
                let p = self.principal(a, kind);
                if !out.contains(&p) {
                    out.push(p);
                }
            }
            out
        } else {
            self.lattice(kind).to_vec()
        }
    }

    fn element_holds(&self, i: &Set, p: Predicate) -> bool {
        let r = &self.ring;
        let n = self.n();
        let pw = |a| self.element_power_in(a, i).is_some();
        let pairs = || (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
        match p {
            Predicate::CompletelyPrime => i.contains(&false) && pairs().all(|(a, b)| !i[r.mul(a, b)] || i[a] || i[b]),
            Predicate::CompletelySemiprime => (0..n).all(|a| !pw(a) || i[a]),
            Predicate::CompletelyNilary => pairs().all(|(a, b)| !i[r.mul(a, b)] || pw(a) || pw(b)),
            Predicate::CompletelyRightPrimary => pairs().all(|(a, b)| !i[r.mul(a, b)] || i[a] || pw(b)),
            Predicate::CompletelyLeftPrimary => pairs().all(|(a, b)| !i[r.mul(a, b)] || pw(a) || i[b]),
            _ => unreachable!("not an element-wise predicate"),
        }
    }

    /// `(kind, principal, weak)` and the two conclusions of an ideal-pair predicate.
    fn ideal_shape(p: Predicate) -> Option<(IdealKind, bool, bool, bool, bool)> {
        // (kind, principal, weak, lhs_is_power, rhs_is_power)
        use IdealKind::*;
        Some(match p {
            Predicate::Prime => (TwoSided, false, false, false, false),
            Predicate::Nilary => (TwoSided, false, false, true, true),
            Predicate::PNilary => (TwoSided, true, false, true, true),
            Predicate::RightPrimary => (TwoSided, false, false, false, true),
            Predicate::PRightPrimary => (TwoSided, true, false, false, true),
            Predicate::LeftPrimary => (TwoSided, false, false, true, false),
            Predicate::PLeftPrimary => (TwoSided, true, false, true, false),
            Predicate::WeaklyNilary => (TwoSided, false, true, true, true),
            Predicate::WeaklyPNilary => (TwoSided, true, true, true, true),
            Predicate::WeaklyNilaryRight => (Right, false, true, true, true),
            Predicate::WeaklyNilaryLeft => (Left, false, true, true, true),
            _ => return None,
        })
    }

    fn conclusion(&self, j: &Set, i: &Set, power: bool) -> bool {
        if power {
            self.set_power_in(j, i).is_some()
        } else {
            subset(j, i)
        }
    }

    /// Re-derives a verdict from scratch. `None` when the ring is too large for
    /// the subset scan and the predicate quantifies over ideals.
    pub fn recheck(&self, ideal: &[Element], p: Predicate) -> Option<(bool, bool)> {
        let i = from_list(self.n(), ideal)?;
        let proper = i.contains(&false);
        let unital = self.ring.one().is_some();
        let weak_na = |kind: IdealKind| !proper || (kind != IdealKind::TwoSided && !unital);
        match p {
            Predicate::CompletelyPrime
            | Predicate::CompletelySemiprime
            | Predicate::CompletelyNilary
            | Predicate::CompletelyRightPrimary
            | Predicate::CompletelyLeftPrimary => return Some((self.element_holds(&i, p), false)),
            _ => {}
        }
        if let Some((kind, _, true, _, _)) = Self::ideal_shape(p) {
            if weak_na(kind) {
                return Some((false, true));
            }
        }
        if self.n() > RECHECK_MAX_ORDER {
            return None;
        }
        if p == Predicate::Semiprime {
            let ok =
                self.lattice(IdealKind::TwoSided).iter().all(|j| !subset(&self.product(j, j), &i) || subset(j, &i));
            return Some((ok, false));
        }
        let (kind, principal, weak, lhs, rhs) = Self::ideal_shape(p)?;
        if p == Predicate::Prime && !proper {
            return Some((false, false));
        }
        let domain = self.quantifier_domain(kind, principal);
        let ok = domain.iter().all(|j| {
            domain.iter().all(|k| {
                let prod = self.product(j, k);
                let nonzero = prod.iter().skip(1).any(|&b| b);
                !subset(&prod, &i) || (weak && !nonzero) || self.conclusion(j, &i, lhs) || self.conclusion(k, &i, rhs)
            })
        });
        Some((ok, false))
    }

    /// Checks a verdict: counter-witnesses are verified directly, and on rings
    /// small enough the verdict itself is re-derived.
    pub fn replay(&self, ideal: &[Element], p: Predicate, v: &Verdict) -> Result<(), ReplayFailure> {
        let fail = |reason: String| ReplayFailure {
            ring: self.ring.label().to_string(),
            ideal: ideal.to_vec(),
            predicate: p,
            reason,
        };
        let i = from_list(self.n(), ideal).ok_or_else(|| fail("ideal out of range".into()))?;
        if !self.is_ideal(&i, IdealKind::TwoSided) {
            return Err(fail("target is not a two-sided ideal".into()));
        }
        if v.holds && v.witness != Witness::None {
            return Err(fail("positive verdict carries a witness".into()));
        }
        if !v.holds && !v.na {
            self.check_counterexample(&i, p, &v.witness).map_err(fail)?;
        }
        if let Some((holds, na)) = self.recheck(ideal, p) {
            if (holds, na) != (v.holds, v.na) {
                return Err(fail(format!(
                    "independent evaluation gives holds={holds} na={na}, verdict says holds={} na={}",
                    v.holds, v.na
                )));
            }
        } else if v.na {
            // large ring: NA can still be confirmed directly
            let proper = i.contains(&false);
            if proper && self.ring.one().is_some() {
                return Err(fail("not-applicable verdict on a proper ideal of a unital ring".into()));
            }
        }
        Ok(())
    }

    fn check_counterexample(&self, i: &Set, p: Predicate, w: &Witness) -> Result<(), String> {
        let r = &self.ring;
        let n = self.n();
        let in_range = |a: Element| if a < n { Ok(()) } else { Err(format!("element {a} out of range")) };
        let no_power = |a: Element, label: &str| match self.element_power_in(a, i) {
            None => Ok(()),
            Some(e) => Err(format!("{label}^{e} lies in the ideal")),
        };
        let outside = |a: Element, label: &str| {
            if i[a] {
                Err(format!("{label} lies in the ideal"))
            } else {
                Ok(())
            }
        };
        match (p, w) {
            (Predicate::CompletelyPrime | Predicate::Prime, Witness::None) => {
                if i.contains(&false) {
                    Err("no witness for a proper ideal".into())
                } else {
                    Ok(())
                }
            }
            (Predicate::CompletelySemiprime, &Witness::Element { a, exponent }) => {
                in_range(a)?;
                outside(a, "a")?;
                match (self.element_power_in(a, i), exponent) {
                    (Some(e), Some(x)) if e == x => Ok(()),
                    (found, claimed) => Err(format!("least power {found:?}, witness claims {claimed:?}")),
                }
            }
            (
                Predicate::CompletelyPrime
                | Predicate::CompletelyNilary
                | Predicate::CompletelyRightPrimary
                | Predicate::CompletelyLeftPrimary,
                &Witness::ElementPair { a, b, .. },
            ) => {
                in_range(a)?;
                in_range(b)?;
                if !i[r.mul(a, b)] {
                    return Err("product a·b is outside the ideal".into());
                }
                match p {
                    Predicate::CompletelyPrime => outside(a, "a").and(outside(b, "b")),
                    Predicate::CompletelyNilary => no_power(a, "a").and(no_power(b, "b")),
                    Predicate::CompletelyRightPrimary => outside(a, "a").and(no_power(b, "b")),
                    _ => no_power(a, "a").and(outside(b, "b")),
                }
            }
            (Predicate::Semiprime, Witness::IdealPair { kind, j, k, .. }) => {
                let j = self.witness_ideal(j, *kind, IdealKind::TwoSided, None)?;
                if from_list(n, k) != Some(j.clone()) {
                    return Err("semiprime witness must repeat one ideal".into());
                }
                if !subset(&self.product(&j, &j), i) {
                    return Err("J² is not inside the ideal".into());
                }
                if subset(&j, i) {
                    return Err("J lies inside the ideal".into());
                }
                Ok(())
            }
            (_, Witness::IdealPair { kind, j, k, j_generator, k_generator, .. }) => {
                let (want_kind, principal, weak, lhs, rhs) =
                    Self::ideal_shape(p).ok_or("ideal pair witness for an element predicate")?;
                let jg = if principal { Some(j_generator.ok_or("missing generator")?) } else { None };
                let kg = if principal { Some(k_generator.ok_or("missing generator")?) } else { None };
                let js = self.witness_ideal(j, *kind, want_kind, jg)?;
                let ks = self.witness_ideal(k, *kind, want_kind, kg)?;
                let prod = self.product(&js, &ks);
                if !subset(&prod, i) {
                    return Err("JK is not inside the ideal".into());
                }
                if weak && !prod.iter().skip(1).any(|&b| b) {
                    return Err("JK is zero, so the pair is exempt".into());
                }
                if self.conclusion(&js, i, lhs) {
                    return Err("J satisfies its conclusion".into());
                }
                if self.conclusion(&ks, i, rhs) {
                    return Err("K satisfies its conclusion".into());
                }
                Ok(())
            }
            (_, w) => Err(format!("witness {w:?} does not fit this predicate")),
        }
    }

    fn witness_ideal(
        &self,
        list: &[Element],
        kind: IdealKind,
        want: IdealKind,
        generator: Option<Element>,
    ) -> Result<Set, String> {
        if kind != want {
            return Err(format!("witness ideal is {kind}, expected {want}"));
        }
        let s = from_list(self.n(), list).ok_or("witness ideal out of range")?;
        if !self.is_ideal(&s, kind) {
            return Err(format!("witness {list:?} is not a {kind} ideal"));
        }
        if let Some(g) = generator {
            if g >= self.n() || self.principal(g, kind) != s {
                return Err(format!("witness {list:?} is not generated by {g}"));
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::Classifier;
    use crate::ring::{make_matrix_ring, make_zn};

    #[test]
    fn replays_every_verdict_on_small_rings() {
        for r in [make_zn(6), make_zn(12), make_matrix_ring(&make_zn(2), 2, 64).unwrap()] {
            let cx = Classifier::new(&r);
            let rp = Replayer::new(&r);
            for report in cx.full_report().unwrap() {
                for (p, v) in &report.verdicts.0 {
                    rp.replay(&report.ideal, *p, v).unwrap();
                }
            }
        }
    }

    #[test]
    fn rejects_forged_witnesses() {
        let z6 = make_zn(6);
        let rp = Replayer::new(&z6);
        let forged =
            Verdict { holds: false, witness: Witness::ElementPair { a: 2, b: 2, n: None, m: None }, na: false };
        assert!(rp.replay(&[0], Predicate::CompletelyNilary, &forged).is_err());
        let flipped = Verdict { holds: true, witness: Witness::None, na: false };
        assert!(rp.replay(&[0], Predicate::Nilary, &flipped).is_err());
        let wrong_gen = Verdict {
            holds: false,
            witness: Witness::IdealPair {
                kind: IdealKind::TwoSided,
                j: vec![0, 3],
                k: vec![0, 2, 4],
                j_generator: Some(2),
                k_generator: Some(2),
                m: None,
                n: None,
            },
            na: false,
        };
        assert!(rp.replay(&[0], Predicate::PNilary, &wrong_gen).is_err());
    }
}
