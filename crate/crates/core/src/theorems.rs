//! Instance-level checks of the known implications between nilary-type
//! predicates, run over a ring corpus.
//!
//! Each case walks its instances, counts how many satisfy the hypothesis (so
//! vacuous passes are visible), and records every violating instance together
//! with the verdicts that produced it.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::ElementSet;
use crate::classifier::{Classifier, ClassifyError, Judge, Predicate, Verdict, Witness};
use crate::corpus::{Corpus, CorpusEntry};
use crate::ideal::{ideal_product, is_nil, power_chain, Ideal, IdealError, IdealKind};
use crate::ring::{characteristic, make_matrix_ring, make_quotient, make_zn, Element, Ring, RingError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("unknown theorem case {0:?}")]
    UnknownCase(String),
}

type Outcome = Result<Tally, HarnessError>;

/// One verdict that took part in a violation.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessRecord {
    pub ring: String,
    pub ideal: Vec<Element>,
    pub predicate: Predicate,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub instance: String,
    pub witnesses: Vec<WitnessRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremResult {
    pub id: &'static str,
    pub description: &'static str,
    /// Fixed reproductions of a single worked example, as opposed to corpus sweeps.
    pub example: bool,
    pub pass: bool,
    pub instances: usize,
    pub hypothesis_instances: usize,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub rings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HarnessReport {
    pub cases: Vec<TheoremResult>,
    pub corpus: CorpusSummary,
    pub warnings: Vec<String>,
}

impl HarnessReport {
    pub fn pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    /// Drops timing so two runs over the same corpus serialise identically.
    pub fn without_timing(mut self) -> HarnessReport {
        for c in &mut self.cases {
            c.elapsed_ms = None;
        }
        self
    }

    pub fn case(&self, id: &str) -> Option<&TheoremResult> {
        self.cases.iter().find(|c| c.id == id)
    }
}

#[derive(Default)]
struct Tally {
    instances: usize,
    hypothesis: usize,
    violations: Vec<Violation>,
}

impl Tally {
    fn implication(&mut self, hyp: bool, concl: bool, violation: impl FnOnce() -> Violation) {
        self.instances += 1;
        if hyp {
            self.hypothesis += 1;
            if !concl {
                self.violations.push(violation());
            }
        }
    }

    /// Counts the instance as non-vacuous when either side holds.
    fn equivalence(&mut self, lhs: bool, rhs: bool, violation: impl FnOnce() -> Violation) {
        self.instances += 1;
        if lhs || rhs {
            self.hypothesis += 1;
        }
        if lhs != rhs {
            self.violations.push(violation());
        }
    }

    /// A fixed example: every listed check must hold.
    fn example(&mut self, ok: bool, violation: impl FnOnce() -> Violation) {
        self.instances += 1;
        self.hypothesis += 1;
        if !ok {
            self.violations.push(violation());
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.instances += other.instances;
        self.hypothesis += other.hypothesis;
        self.violations.extend(other.violations);
    }
}

/// Verdict lookup through the judge, remembering what was asked for witness reports.
struct Probe<'a> {
    judge: &'a dyn Judge,
    seen: Vec<WitnessRecord>,
}

impl<'a> Probe<'a> {
    fn new(judge: &'a dyn Judge) -> Self {
        Probe { judge, seen: Vec::new() }
    }

    fn v(&mut self, cx: &Classifier, i: &Ideal, p: Predicate) -> Result<bool, ClassifyError> {
        let verdict = self.judge.verdict(cx, i, p)?;
        let holds = verdict.holds;
        self.seen.push(WitnessRecord {
            ring: cx.ring().label().to_string(),
            ideal: i.elements(),
            predicate: p,
            verdict,
        });
        Ok(holds)
    }

    /// Zero ideal of the ring.
    fn z(&mut self, cx: &Classifier, p: Predicate) -> Result<bool, ClassifyError> {
        self.v(cx, &cx.zero_ideal(), p)
    }

    fn violation(&mut self, instance: String) -> Violation {
        Violation { instance, witnesses: std::mem::take(&mut self.seen) }
    }

    fn reset(&mut self) {
        self.seen.clear();
    }
}

fn describe(r: &Ring, i: &Ideal) -> String {
    format!("{} I={:?}", r.label(), i.elements())
}

fn two_sided(e: &CorpusEntry) -> Result<&[Ideal], HarnessError> {
    Ok(e.classifier.lattice(IdealKind::TwoSided)?.ideals())
}

fn proper_ideals(e: &CorpusEntry) -> Result<Vec<&Ideal>, HarnessError> {
    Ok(two_sided(e)?.iter().filter(|i| i.is_proper()).collect())
}

fn quotient_classifier(cx: &Classifier, i: &Ideal) -> Result<(Classifier, crate::ring::Hom), HarnessError> {
    let (q, hom) = make_quotient(cx.ring(), i)?;
    Ok((Classifier::new(&q), hom))
}

/// `ab - ba ∈ I` for all `a, b`.
fn quotient_is_commutative(r: &Ring, i: &Ideal) -> bool {
    r.elements().all(|a| r.elements().all(|b| i.contains(r.sub(r.mul(a, b), r.mul(b, a)))))
}

fn check_p1_2(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    use Predicate::*;
    let mut t = Tally::default();
    for e in &corpus.entries {
        let cx = &e.classifier;
        for i in proper_ideals(e)? {
            let mut p = Probe::new(judge);
            let lhs = p.v(cx, i, CompletelyPrime)?;
            let rhs = p.v(cx, i, CompletelySemiprime)? && p.v(cx, i, CompletelyNilary)?;
            t.equivalence(lhs, rhs, || p.violation(describe(cx.ring(), i)));
        }
    }
    Ok(t)
}

/// Ordered tuples of length `len` over `0..count`.
fn tuples(count: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| (0..count).map(move |x| [t.clone(), vec![x]].concat())).collect();
    }
    out
}

fn completely_nilary_ideals<'e>(e: &'e CorpusEntry, judge: &dyn Judge) -> Result<Vec<&'e Ideal>, HarnessError> {
    let mut out = Vec::new();
    for i in two_sided(e)? {
        if judge.verdict(&e.classifier, i, Predicate::CompletelyNilary)?.holds {
            out.push(i);
        }
    }
    Ok(out)
}

const MAX_PRODUCT_FACTORS: usize = 3;

fn check_p1_3(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    let per_ring: Vec<Outcome> = corpus
        .entries
        .par_iter()
        .map(|e| {
            let mut t = Tally::default();
            let cx = &e.classifier;
            let qs = completely_nilary_ideals(e, judge)?;
            let chains: Vec<_> = qs.iter().map(|q| power_chain(q)).collect();
            for len in 1..=MAX_PRODUCT_FACTORS {
                for tuple in tuples(qs.len(), len) {
                    let mut meet: ElementSet = qs[tuple[0]].mask().clone();
                    let mut product = qs[tuple[0]].clone();
                    for &k in &tuple[1..] {
                        meet = meet.intersection(qs[k].mask());
                        product = ideal_product(&product, qs[k])?;
                    }
                    let hyp = tuple.iter().any(|&k| chains[k].first_power_within(&meet).is_some());
                    let mut p = Probe::new(judge);
                    let concl = if hyp { p.v(cx, &product, Predicate::CompletelyNilary)? } else { true };
                    t.implication(hyp, concl, || {
                        let factors: Vec<_> = tuple.iter().map(|&k| qs[k].elements()).collect();
                        p.violation(format!("{} Q={factors:?}", cx.ring().label()))
                    });
                }
            }
            Ok(t)
        })
        .collect();
    merge(per_ring)
}

fn check_p1_3_nilary_quotient(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    let mut t = Tally::default();
    for e in &corpus.entries {
        let cx = &e.classifier;
        for q in completely_nilary_ideals(e, judge)? {
            let chain = power_chain(q);
            for n in 1..=MAX_PRODUCT_FACTORS as u32 {
                let qn = chain.power(n);
                let (qcx, _) = quotient_classifier(cx, qn)?;
                let mut p = Probe::new(judge);
                let nilary = p.z(&qcx, Predicate::Nilary)?;
                t.implication(true, nilary, || {
                    p.violation(format!("{} Q={:?} n={n}", cx.ring().label(), q.elements()))
                });
            }
        }
    }
    Ok(t)
}

fn check_pquot(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    let mut t = Tally::default();
    for e in &corpus.entries {
        let cx = &e.classifier;
        for i in proper_ideals(e)? {
            let (qcx, _) = quotient_classifier(cx, i)?;
            let mut p = Probe::new(judge);
            let ideal = p.v(cx, i, Predicate::CompletelyNilary)?;
            let ring = p.z(&qcx, Predicate::CompletelyNilary)?;
            t.equivalence(ideal, ring, || p.violation(describe(cx.ring(), i)));
        }
    }
    Ok(t)
}

/// Forward, backward and corollary directions for every pair `K ⊆ I`.
fn check_phom(corpus: &Corpus, judge: &dyn Judge) -> Result<[Tally; 3], HarnessError> {
    let mut out: [Tally; 3] = Default::default();
    for e in &corpus.entries {
        let cx = &e.classifier;
        let lattice = two_sided(e)?;
        for k in lattice {
            let (qcx, hom) = quotient_classifier(cx, k)?;
            for i in lattice.iter().filter(|i| k.is_subset(i)) {
                let image = Ideal::from_mask(qcx.ring(), hom.image(i.mask()), IdealKind::TwoSided)?;
                let instance = || format!("{} K={:?} I={:?}", cx.ring().label(), k.elements(), i.elements());
                let mut p = Probe::new(judge);
                let cn_i = p.v(cx, i, Predicate::CompletelyNilary)?;
                let cn_image = p.v(&qcx, &image, Predicate::CompletelyNilary)?;
                out[0].implication(cn_i, cn_image, || p.violation(instance()));

                p.reset();
                let cn_image = p.v(&qcx, &image, Predicate::CompletelyNilary)?;
                let pulled = hom.preimage(image.mask());
                let back = if cn_image && pulled == *i.mask() {
                    let pulled = Ideal::from_mask(cx.ring(), pulled, IdealKind::TwoSided)?;
                    p.v(cx, &pulled, Predicate::CompletelyNilary)?
                } else {
                    false
                };
                out[1].implication(cn_image, back, || p.violation(instance()));

                p.reset();
                let cn_i = p.v(cx, i, Predicate::CompletelyNilary)?;
                let cn_image = p.v(&qcx, &image, Predicate::CompletelyNilary)?;
                out[2].equivalence(cn_i, cn_image, || p.violation(instance()));
            }
        }
    }
    Ok(out)
}

fn check_pnil_lift(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    let mut t = Tally::default();
    for e in &corpus.entries {
        let cx = &e.classifier;
        for i in two_sided(e)? {
            let mut p = Probe::new(judge);
            let nil = is_nil(i).0;
            let hyp = nil && {
                let (qcx, _) = quotient_classifier(cx, i)?;
                p.z(&qcx, Predicate::CompletelyNilary)?
            };
            let concl = if hyp { p.z(cx, Predicate::CompletelyNilary)? } else { true };
            t.implication(hyp, concl, || p.violation(describe(cx.ring(), i)));
        }
    }
    Ok(t)
}

fn check_pcomm(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    let mut t = Tally::default();
    for e in corpus.entries.iter().filter(|e| e.ring().is_commutative()) {
        let cx = &e.classifier;
        let mut p = Probe::new(judge);
        let pn = p.z(cx, Predicate::PNilary)?;
        let cn = p.z(cx, Predicate::CompletelyNilary)?;
        t.equivalence(pn, cn, || p.violation(cx.ring().label().to_string()));
    }
    Ok(t)
}

fn check_ccomm_quotient(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    let mut t = Tally::default();
    for e in &corpus.entries {
        let cx = &e.classifier;
        for i in two_sided(e)?.iter().filter(|i| quotient_is_commutative(cx.ring(), i)) {
            let mut p = Probe::new(judge);
            let pn = p.v(cx, i, Predicate::PNilary)?;
            let cn = p.v(cx, i, Predicate::CompletelyNilary)?;
            t.equivalence(pn, cn, || p.violation(describe(cx.ring(), i)));
        }
    }
    Ok(t)
}

/// `hyp(0) ⟹ nilary(0)` over every corpus ring.
fn ring_level(corpus: &Corpus, judge: &dyn Judge, hyp: Predicate, concl: Predicate) -> Outcome {
    let mut t = Tally::default();
    for e in &corpus.entries {
        let cx = &e.classifier;
        let mut p = Probe::new(judge);
        let h = p.z(cx, hyp)?;
        let c = if h { p.z(cx, concl)? } else { true };
        t.implication(h, c, || p.violation(cx.ring().label().to_string()));
    }
    Ok(t)
}

fn check_cchar(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    let mut t = Tally::default();
    // a unity distinct from zero
    for e in corpus.entries.iter().filter(|e| e.ring().one().is_some() && e.ring().order() > 1) {
        let cx = &e.classifier;
        let mut p = Probe::new(judge);
        let cn = p.z(cx, Predicate::CompletelyNilary)?;
        let ch = characteristic(cx.ring())?;
        t.implication(cn, ch.is_prime_power(), || {
            p.violation(format!("{} char={} factors={:?}", cx.ring().label(), ch.value, ch.factors))
        });
    }
    Ok(t)
}

fn check_nil_ring(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    let mut t = Tally::default();
    for e in &corpus.entries {
        let cx = &e.classifier;
        let nil = is_nil(&Ideal::full(cx.ring(), IdealKind::TwoSided)).0;
        let mut p = Probe::new(judge);
        let cn = if nil { p.z(cx, Predicate::CompletelyNilary)? } else { true };
        t.implication(nil, cn, || p.violation(cx.ring().label().to_string()));
    }
    Ok(t)
}

fn check_hierarchy(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    use Predicate::*;
    let mut t = Tally::default();
    for e in &corpus.entries {
        let cx = &e.classifier;
        for i in proper_ideals(e)? {
            for (strong, weak) in [(Nilary, WeaklyNilary), (PNilary, WeaklyPNilary)] {
                let mut p = Probe::new(judge);
                let s = p.v(cx, i, strong)?;
                let w = if s { p.v(cx, i, weak)? } else { true };
                t.implication(s, w, || p.violation(format!("{} {strong}⟹{weak}", describe(cx.ring(), i))));
            }
        }
    }
    Ok(t)
}

/// Weak and full forms of the two nilary variants.
const WEAK_PAIRS: [(Predicate, Predicate); 2] =
    [(Predicate::WeaklyNilary, Predicate::Nilary), (Predicate::WeaklyPNilary, Predicate::PNilary)];

fn check_p2_3w(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    let mut t = Tally::default();
    for e in &corpus.entries {
        let cx = &e.classifier;
        for (weak, full) in WEAK_PAIRS {
            if !judge.verdict(cx, &cx.zero_ideal(), full)?.holds {
                continue;
            }
            for i in proper_ideals(e)? {
                let mut p = Probe::new(judge);
                p.z(cx, full)?;
                let w = p.v(cx, i, weak)?;
                let f = if w { p.v(cx, i, full)? } else { true };
                t.implication(w, f, || p.violation(format!("{} {weak}", describe(cx.ring(), i))));
            }
        }
    }
    Ok(t)
}

fn check_p2_4w(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    let mut t = Tally::default();
    for e in &corpus.entries {
        let cx = &e.classifier;
        for i in proper_ideals(e)? {
            let square_zero = ideal_product(i, i)?.is_zero();
            for (weak, full) in WEAK_PAIRS {
                let mut p = Probe::new(judge);
                let w = p.v(cx, i, weak)?;
                let concl = !w || square_zero || p.v(cx, i, full)?;
                t.implication(w, concl, || p.violation(format!("{} {weak} I²≠0", describe(cx.ring(), i))));
            }
        }
    }
    Ok(t)
}

fn check_c2_5w(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    let mut t = Tally::default();
    for e in &corpus.entries {
        let cx = &e.classifier;
        if !judge.verdict(cx, &cx.zero_ideal(), Predicate::Semiprime)?.holds {
            continue;
        }
        for i in proper_ideals(e)? {
            for (weak, full) in WEAK_PAIRS {
                let mut p = Probe::new(judge);
                let w = p.v(cx, i, weak)?;
                let rhs = i.is_zero() || p.v(cx, i, full)?;
                t.equivalence(w, rhs, || p.violation(format!("{} {weak}", describe(cx.ring(), i))));
            }
        }
    }
    Ok(t)
}

fn check_p2_6(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    let mut t = Tally::default();
    for e in corpus.entries.iter().filter(|e| e.ring().one().is_some()) {
        let cx = &e.classifier;
        for l in proper_ideals(e)? {
            for principal in [false, true] {
                let mut p = Probe::new(judge);
                let base = if principal { Predicate::WeaklyPNilary } else { Predicate::WeaklyNilary };
                let two = p.v(cx, l, base)?;
                let right = cx.is_weakly_nilary_onesided(l, IdealKind::Right, principal)?;
                let left = cx.is_weakly_nilary_onesided(l, IdealKind::Left, principal)?;
                for (side, v) in [(Predicate::WeaklyNilaryRight, &right), (Predicate::WeaklyNilaryLeft, &left)] {
                    p.seen.push(WitnessRecord {
                        ring: cx.ring().label().to_string(),
                        ideal: l.elements(),
                        predicate: side,
                        verdict: v.clone(),
                    });
                }
                let agree = two == right.holds && two == left.holds;
                t.instances += 1;
                if two || right.holds || left.holds {
                    t.hypothesis += 1;
                }
                if !agree {
                    let tag = if principal { "principal" } else { "all" };
                    t.violations.push(p.violation(format!("{} ({tag} one-sided ideals)", describe(cx.ring(), l))));
                }
            }
        }
    }
    Ok(t)
}

fn check_prime_remark(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    ring_level(corpus, judge, Predicate::Prime, Predicate::Nilary)
}

/// Z_6: the zero ideal is weakly nilary but not nilary.
pub fn check_e2_2(judge: &dyn Judge) -> Result<TheoremResult, HarnessError> {
    let z6 = make_zn(6);
    let cx = Classifier::new(&z6);
    let zero = cx.zero_ideal();
    let mut t = Tally::default();
    let mut p = Probe::new(judge);
    let weakly = p.v(&cx, &zero, Predicate::WeaklyNilary)?;
    let weakly_p = p.v(&cx, &zero, Predicate::WeaklyPNilary)?;
    let nilary = judge.verdict(&cx, &zero, Predicate::Nilary)?;
    let witness_ok = match &nilary.witness {
        Witness::IdealPair { j, k, .. } => {
            let j = Ideal::from_mask(&z6, ElementSet::from_elements(6, j.iter().copied()), IdealKind::TwoSided);
            let k = Ideal::from_mask(&z6, ElementSet::from_elements(6, k.iter().copied()), IdealKind::TwoSided);
            match (j, k) {
                (Ok(j), Ok(k)) => ideal_product(&j, &k)?.is_zero() && !j.is_zero() && !k.is_zero(),
                _ => false,
            }
        }
        _ => false,
    };
    let ok = weakly && weakly_p && !nilary.holds && witness_ok;
    p.seen.push(WitnessRecord {
        ring: z6.label().into(),
        ideal: vec![0],
        predicate: Predicate::Nilary,
        verdict: nilary,
    });
    t.example(ok, || p.violation("Zn:6 I=[0]".into()));
    Ok(finish(&CASES[index_of("E2.2")], t, None))
}

/// M_2(Z_2): prime, nilary and p-nilary, yet not completely nilary.
pub fn check_em2z2(judge: &dyn Judge) -> Result<TheoremResult, HarnessError> {
    use Predicate::*;
    let m = make_matrix_ring(&make_zn(2), 2, 16)?;
    // entry (r, c) is digit 2r + c
    let (e11, e22) = (1, 8);
    let cx = Classifier::new(&m);
    let zero = cx.zero_ideal();
    let mut p = Probe::new(judge);
    let mut ok = true;
    for (pred, expected) in [(Prime, true), (Nilary, true), (PNilary, true), (RightPrimary, true)] {
        ok &= p.v(&cx, &zero, pred)? == expected;
    }
    let expected_pair = Witness::ElementPair { a: e11, b: e22, n: None, m: None };
    for pred in [CompletelyNilary, CompletelyRightPrimary] {
        let v = judge.verdict(&cx, &zero, pred)?;
        ok &= !v.holds && v.witness == expected_pair;
        p.seen.push(WitnessRecord { ring: m.label().into(), ideal: vec![0], predicate: pred, verdict: v });
    }
    ok &= m.mul(e11, e22) == 0 && m.nilpotency_index(e11).is_none() && m.nilpotency_index(e22).is_none();
    let mut t = Tally::default();
    t.example(ok, || p.violation("M:2:Zn:2 I=[0]".into()));
    Ok(finish(&CASES[index_of("EM2Z2")], t, None))
}

fn merge(parts: Vec<Outcome>) -> Outcome {
    let mut t = Tally::default();
    for part in parts {
        t.absorb(part?);
    }
    Ok(t)
}

enum Runner {
    Sweep(fn(&Corpus, &dyn Judge) -> Outcome),
    /// Index into the three-way homomorphism check.
    Hom(usize),
    Example(fn(&dyn Judge) -> Result<TheoremResult, HarnessError>),
}

pub struct TheoremCase {
    pub id: &'static str,
    pub description: &'static str,
    runner: Runner,
}

impl TheoremCase {
    pub fn is_example(&self) -> bool {
        matches!(self.runner, Runner::Example(_))
    }
}

macro_rules! case {
    ($id:literal, $desc:literal, $runner:expr) => {
        TheoremCase { id: $id, description: $desc, runner: $runner }
    };
}

/// The registry, in report order.
pub static CASES: [TheoremCase; 22] = [
    case!("P1.2", "completely prime ⟺ completely semiprime and completely nilary", Runner::Sweep(check_p1_2)),
    case!("P1.3", "Q1⋯Qn completely nilary when each Qi is and some Qk^s ⊆ ∩Qi (n ≤ 3)", Runner::Sweep(check_p1_3)),
    case!(
        "P1.3-nilary-quot",
        "Q completely nilary ⟹ A/Q^n is a nilary ring (n ≤ 3)",
        Runner::Sweep(check_p1_3_nilary_quotient)
    ),
    case!("Pquot", "I completely nilary ⟺ A/I completely nilary ring", Runner::Sweep(check_pquot)),
    case!("Phom-fwd", "I completely nilary, ker φ ⊆ I ⟹ φ(I) completely nilary", Runner::Hom(0)),
    case!("Phom-back", "φ(I) completely nilary ⟹ φ⁻¹(φ(I)) = I completely nilary", Runner::Hom(1)),
    case!("Cquot-corr", "K ⊆ I: I completely nilary ⟺ I/K completely nilary in A/K", Runner::Hom(2)),
    case!("Pnil-lift", "A/I completely nilary and I nil ⟹ A completely nilary", Runner::Sweep(check_pnil_lift)),
    case!("Pcomm-pnilary", "commutative A: p-nilary ⟺ completely nilary", Runner::Sweep(check_pcomm)),
    case!("Ccomm-quot", "A/I commutative: I p-nilary ⟺ I completely nilary", Runner::Sweep(check_ccomm_quotient)),
    case!(
        "Pnil-nilpotent",
        "completely nilary ring (nil ideals nilpotent, Artinian/Noetherian) ⟹ nilary",
        Runner::Sweep(check_pnil_nilpotent)
    ),
    case!(
        "Cnoeth-pnilary",
        "p-nilary ring with nilpotent sums of nilpotent ideals ⟹ nilary",
        Runner::Sweep(check_cnoeth)
    ),
    case!("Cchar", "unital completely nilary ring has prime-power characteristic", Runner::Sweep(check_cchar)),
    case!("Rnil-cnilary", "nil ring ⟹ completely nilary", Runner::Sweep(check_nil_ring)),
    case!("Rprime-nilary", "prime ring ⟹ nilary ring", Runner::Sweep(check_prime_remark)),
    case!("D2.1-hierarchy", "(p-)nilary proper ideal ⟹ weakly (p-)nilary", Runner::Sweep(check_hierarchy)),
    case!("E2.2", "Z_6: zero ideal weakly nilary, not nilary", Runner::Example(check_e2_2)),
    case!("P2.3w", "(p-)nilary ring, weakly (p-)nilary I ⟹ I (p-)nilary", Runner::Sweep(check_p2_3w)),
    case!("P2.4w", "weakly (p-)nilary I ⟹ I² = 0 or I (p-)nilary", Runner::Sweep(check_p2_4w)),
    case!("C2.5w", "semiprime A: weakly (p-)nilary ⟺ I = 0 or (p-)nilary", Runner::Sweep(check_c2_5w)),
    case!("P2.6", "unital A: weakly (p-)nilary via two-sided, right and left ideals agree", Runner::Sweep(check_p2_6)),
    case!(
        "EM2Z2",
        "M_2(Z_2): prime, nilary, p-nilary, right primary; not completely nilary or completely right primary",
        Runner::Example(check_em2z2)
    ),
];

fn check_pnil_nilpotent(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    ring_level(corpus, judge, Predicate::CompletelyNilary, Predicate::Nilary)
}

fn check_cnoeth(corpus: &Corpus, judge: &dyn Judge) -> Outcome {
    ring_level(corpus, judge, Predicate::PNilary, Predicate::Nilary)
}

fn index_of(id: &str) -> usize {
    CASES.iter().position(|c| c.id == id).expect("registered case")
}

pub fn case_ids() -> Vec<&'static str> {
    CASES.iter().map(|c| c.id).collect()
}

fn finish(case: &TheoremCase, outcome: Tally, elapsed: Option<u64>) -> TheoremResult {
    TheoremResult {
        id: case.id,
        description: case.description,
        example: case.is_example(),
        pass: outcome.violations.is_empty(),
        instances: outcome.instances,
        hypothesis_instances: outcome.hypothesis,
        violations: outcome.violations,
        elapsed_ms: elapsed,
    }
}

/// Runs every registered case.
pub fn run_all(corpus: &Corpus, judge: &dyn Judge) -> Result<HarnessReport, HarnessError> {
    run_selected(corpus, judge, &[])
}

/// Runs the cases named in `ids` (all cases when empty), in registry order.
pub fn run_selected(corpus: &Corpus, judge: &dyn Judge, ids: &[&str]) -> Result<HarnessReport, HarnessError> {
    if let Some(bad) = ids.iter().find(|id| !CASES.iter().any(|c| c.id == **id)) {
        return Err(HarnessError::UnknownCase(bad.to_string()));
    }
    let selected: Vec<&TheoremCase> = CASES.iter().filter(|c| ids.is_empty() || ids.contains(&c.id)).collect();
    let needs_hom = selected.iter().any(|c| matches!(c.runner, Runner::Hom(_)));
    let hom = if needs_hom {
        let start = Instant::now();
        Some((check_phom(corpus, judge)?, start.elapsed().as_millis() as u64))
    } else {
        None
    };
    let mut hom = hom.map(|(t, ms)| (t.map(Some), ms));

    let mut results: Vec<Option<TheoremResult>> = selected
        .par_iter()
        .map(|case| -> Result<Option<TheoremResult>, HarnessError> {
            let start = Instant::now();
            let outcome = match &case.runner {
                Runner::Sweep(f) => f(corpus, judge)?,
                Runner::Example(f) => {
                    let mut r = f(judge)?;
                    r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                    return Ok(Some(r));
                }
                Runner::Hom(_) => return Ok(None),
            };
            Ok(Some(finish(case, outcome, Some(start.elapsed().as_millis() as u64))))
        })
        .collect::<Result<_, _>>()?;
    for (slot, case) in results.iter_mut().zip(&selected) {
        if let (None, Runner::Hom(k)) = (&slot, &case.runner) {
            let (parts, ms) = hom.as_mut().expect("computed above");
            *slot = Some(finish(case, parts[*k].take().expect("each part used once"), Some(*ms)));
        }
    }

    let mut warnings = Vec::new();
    if corpus.is_empty() {
        warnings.push("empty corpus: sweep cases are vacuous".to_string());
    }
    Ok(HarnessReport {
        cases: results.into_iter().map(|r| r.expect("every case produced a result")).collect(),
        corpus: CorpusSummary { rings: corpus.labels() },
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::Exhaustive;

    #[test]
    fn registry_ids_are_unique() {
        let ids = case_ids();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }

    #[test]
    fn tuples_enumerate_ordered_products() {
        assert_eq!(tuples(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 3).len(), 27);
    }

    #[test]
    fn examples_pass() {
        assert!(check_e2_2(&Exhaustive).unwrap().pass);
        assert!(check_em2z2(&Exhaustive).unwrap().pass);
    }

    #[test]
    fn empty_corpus() {
        let report = run_all(&Corpus::empty(), &Exhaustive).unwrap();
        assert!(report.pass());
        assert!(!report.warnings.is_empty());
        for c in report.cases.iter().filter(|c| !c.example) {
            assert_eq!(c.instances, 0, "{}", c.id);
        }
    }

    #[test]
    fn unknown_case_is_an_error() {
        assert!(matches!(run_selected(&Corpus::empty(), &Exhaustive, &["nope"]), Err(HarnessError::UnknownCase(_))));
    }

    #[test]
    fn selection_keeps_registry_order() {
        let corpus = Corpus::from_rings([make_zn(4), make_zn(6)]);
        let report = run_selected(&corpus, &Exhaustive, &["Cquot-corr", "P1.2"]).unwrap();
        let ids: Vec<_> = report.cases.iter().map(|c| c.id).collect();
        assert_eq!(ids, vec!["P1.2", "Cquot-corr"]);
        assert!(report.pass());
    }
}
