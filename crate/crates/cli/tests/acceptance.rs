//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use nilary_core::corpus::Corpus;
use nilary_core::ideal::enumerate_ideals;
use nilary_core::{parse_ring_spec, IdealKind, Predicate, Replayer, Ring};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_nilary");

struct Run {
    json: Value,
    code: i32,
    elapsed: Duration,
}

fn nilary(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(BIN).args(args).env_remove("NILARY_MAX_ORDER").output().expect("binary runs");
    let elapsed = start.elapsed();
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: stdout is not JSON ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr))
    });
    Run { json, code: out.status.code().unwrap_or(-1), elapsed }
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn elements(v: &Value) -> Vec<usize> {
    v.as_array().expect("element list").iter().map(|x| x.as_u64().unwrap() as usize).collect()
}

fn verdict<'a>(report: &'a Value, p: &str) -> &'a Value {
    &report["verdicts"][p]
}

fn holds(report: &Value, p: &str) -> bool {
    verdict(report, p)["holds"].as_bool().expect("holds flag")
}

// Z_n arithmetic done directly mod n.
fn zn_ideal(n: usize, set: &[usize]) -> bool {
    let s: BTreeSet<_> = set.iter().copied().collect();
    s.contains(&0)
        && s.iter().all(|&a| s.iter().all(|&b| s.contains(&((a + b) % n))))
        && s.iter().all(|&a| (0..n).all(|r| s.contains(&(r * a % n))))
}

fn zn_product(n: usize, j: &[usize], k: &[usize]) -> BTreeSet<usize> {
    // additive span of pairwise products
    let mut span: BTreeSet<usize> = [0].into();
    let gens: Vec<usize> = j.iter().flat_map(|&a| k.iter().map(move |&b| a * b % n)).collect();
    loop {
        let next: BTreeSet<usize> =
            span.iter().flat_map(|&s| gens.iter().map(move |&g| (s + g) % n)).chain(span.iter().copied()).collect();
        if next == span {
            return span;
        }
        span = next;
    }
}

fn criterion_1() -> Outcome {
    let run = nilary(&["classify", "Zn:6", "--json"]);
    ensure(run.code == 0, || format!("exit {}", run.code))?;
    let reports = run.json.as_array().ok_or("expected a report list")?;
    ensure(reports.len() == 4, || format!("{} reports", reports.len()))?;
    let zero = reports.iter().find(|r| elements(&r["ideal"]) == [0]).ok_or("no zero-ideal report")?;
    ensure(holds(zero, "weakly_nilary"), || "weakly_nilary is false".into())?;
    ensure(!holds(zero, "nilary"), || "nilary is true".into())?;
    let w = &verdict(zero, "nilary")["witness"];
    ensure(w["type"] == "ideal-pair", || format!("witness {w}"))?;
    let (j, k) = (elements(&w["j"]), elements(&w["k"]));
    ensure(zn_ideal(6, &j) && zn_ideal(6, &k), || format!("J={j:?} K={k:?} are not ideals of Z_6"))?;
    let product = zn_product(6, &j, &k);
    ensure(product == [0].into(), || format!("JK = {product:?}"))?;
    // J^m = J and K^n = K here, so no power of either lies in {0}
    for s in [&j, &k] {
        ensure(zn_product(6, s, s) == s.iter().copied().collect() && s.len() > 1, || {
            format!("{s:?} has a power in {{0}}")
        })?;
    }
    ensure(run.elapsed < Duration::from_secs(1), || format!("took {:?}", run.elapsed))?;
    Ok(format!("witness J={j:?} K={k:?}, JK={{0}}, {:?}", run.elapsed))
}

/// Element index of a 2x2 matrix over Z_2: entry (r, c) is binary digit 2r + c.
fn m2_decode(e: usize) -> [[u8; 2]; 2] {
    let d = |r: usize, c: usize| ((e >> (2 * r + c)) & 1) as u8;
    [[d(0, 0), d(0, 1)], [d(1, 0), d(1, 1)]]
}

fn m2_mul(a: [[u8; 2]; 2], b: [[u8; 2]; 2]) -> [[u8; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for r in 0..2 {
        for s in 0..2 {
            c[r][s] = (a[r][0] * b[0][s] + a[r][1] * b[1][s]) % 2;
        }
    }
    c
}

fn criterion_2() -> Outcome {
    let ring = parse_ring_spec("M:2:Zn:2").map_err(|e| e.to_string())?;
    for a in ring.elements() {
        for b in ring.elements() {
            let want = m2_mul(m2_decode(a), m2_decode(b));
            ensure(m2_decode(ring.mul(a, b)) == want, || format!("table disagrees with matrix product at {a},{b}"))?;
        }
    }
    let run = nilary(&["classify", "M:2:Zn:2", "--ideal", "--json"]);
    ensure(run.code == 0, || format!("exit {}", run.code))?;
    let rep = &run.json;
    ensure(elements(&rep["ideal"]) == [0], || format!("ideal {}", rep["ideal"]))?;
    for p in ["prime", "nilary", "p_nilary", "right_primary"] {
        ensure(holds(rep, p), || format!("{p} is false"))?;
    }
    let (e11, e22) = ([[1, 0], [0, 0]], [[0, 0], [0, 1]]);
    for p in ["completely_nilary", "completely_right_primary"] {
        ensure(!holds(rep, p), || format!("{p} is true"))?;
        let w = &verdict(rep, p)["witness"];
        ensure(w["type"] == "element-pair", || format!("{p} witness {w}"))?;
        let (a, b) = (w["a"].as_u64().unwrap() as usize, w["b"].as_u64().unwrap() as usize);
        ensure(m2_decode(a) == e11 && m2_decode(b) == e22, || {
            format!("{p} witness ({:?}, {:?})", m2_decode(a), m2_decode(b))
        })?;
        ensure(m2_mul(e11, e22) == [[0, 0], [0, 0]], || "diag product nonzero".into())?;
    }
    // both diagonal idempotents are nonzero, so no power vanishes
    ensure(m2_mul(e11, e11) == e11 && m2_mul(e22, e22) == e22, || "not idempotent".into())?;
    let replay = Replayer::new(&ring);
    for p in ["prime", "nilary", "p_nilary", "right_primary", "completely_nilary", "completely_right_primary"] {
        let pred: Predicate = p.parse().unwrap();
        let fresh = replay.recheck(&[0], pred).ok_or("recheck unavailable")?;
        ensure(fresh == (holds(rep, p), false), || format!("{p}: independent recheck gives {fresh:?}"))?;
    }
    ensure(run.elapsed < Duration::from_secs(5), || format!("took {:?}", run.elapsed))?;
    Ok(format!("cN/cRP witness (diag(1,0), diag(0,1)), {:?}", run.elapsed))
}

const REQUIRED_CASES: [&str; 22] = [
    "P1.2",
    "P1.3",
    "P1.3-nilary-quot",
    "Pquot",
    "Phom-fwd",
    "Phom-back",
    "Cquot-corr",
    "Pnil-lift",
    "Pcomm-pnilary",
    "Ccomm-quot",
    "Pnil-nilpotent",
    "Cnoeth-pnilary",
    "Cchar",
    "Rnil-cnilary",
    "Rprime-nilary",
    "D2.1-hierarchy",
    "E2.2",
    "P2.3w",
    "P2.4w",
    "C2.5w",
    "P2.6",
    "EM2Z2",
];

fn criterion_3() -> Outcome {
    let run = nilary(&["verify", "--builtin", "--json"]);
    ensure(run.code == 0, || format!("exit {}", run.code))?;
    let rings = run.json["corpus"]["rings"].as_array().ok_or("no corpus list")?.len();
    ensure(rings >= 50, || format!("{rings} rings"))?;
    let cases = run.json["cases"].as_array().ok_or("no cases")?;
    let ids: Vec<&str> = cases.iter().map(|c| c["id"].as_str().unwrap()).collect();
    for id in REQUIRED_CASES {
        ensure(ids.contains(&id), || format!("case {id} missing"))?;
    }
    for c in cases {
        let id = c["id"].as_str().unwrap();
        let violations = c["violations"].as_array().unwrap().len();
        ensure(c["pass"] == true && violations == 0, || format!("{id}: {violations} violations"))?;
        let hyp = c["hypothesis_instances"].as_u64().unwrap();
        ensure(hyp >= 1, || format!("{id}: no hypothesis-satisfying instance"))?;
    }
    ensure(run.elapsed < Duration::from_secs(60), || format!("took {:?}", run.elapsed))?;
    Ok(format!("{} cases, {rings} rings, 0 violations, {:?}", cases.len(), run.elapsed))
}

/// All ideals of `kind` by subset scan (order ≤ 16).
fn subset_ideals(r: &Ring, kind: IdealKind) -> BTreeSet<Vec<usize>> {
    let n = r.order();
    let absorbs = |mask: u32, a: usize| {
        r.elements().all(|x| {
            let left = kind == IdealKind::Right || mask >> r.mul(x, a) & 1 == 1;
            let right = kind == IdealKind::Left || mask >> r.mul(a, x) & 1 == 1;
            left && right
        })
    };
    (0u32..1 << n)
        .filter(|m| m & 1 == 1)
        .filter(|&m| {
            let members: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            members.iter().all(|&a| members.iter().all(|&b| m >> r.add(a, b) & 1 == 1) && absorbs(m, a))
        })
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

fn criterion_4(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for e in corpus.entries.iter().filter(|e| e.ring().order() <= 16) {
        for kind in IdealKind::ALL {
            let fast: BTreeSet<Vec<usize>> =
                enumerate_ideals(e.ring(), kind).map_err(|x| x.to_string())?.iter().map(|i| i.elements()).collect();
            let slow = subset_ideals(e.ring(), kind);
            ensure(fast == slow, || format!("{} {}: {} vs {} ideals", e.spec, kind.as_str(), fast.len(), slow.len()))?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} (ring, kind) lattices match subset scan, {elapsed:?}"))
}

fn criterion_5() -> Outcome {
    let expected =
        [("Zn:12", 6), ("Zn:6", 4), ("Zn:8", 4), ("M:2:Zn:2", 2), ("Zn:2", 2), ("Zn:3", 2), ("Zn:5", 2), ("Zn:7", 2)];
    for (spec, count) in expected {
        let run = nilary(&["ideals", spec, "--oracle", "--json"]);
        ensure(run.code == 0, || format!("{spec}: exit {}", run.code))?;
        let got = run.json["count"].as_u64().unwrap();
        ensure(got == count, || format!("{spec}: {got} ideals, expected {count}"))?;
        ensure(run.json["oracle"] == true, || format!("{spec}: oracle {}", run.json["oracle"]))?;
        let scan = subset_ideals(&parse_ring_spec(spec).unwrap(), IdealKind::TwoSided).len() as u64;
        ensure(scan == count, || format!("{spec}: subset scan finds {scan}"))?;
    }
    Ok("Z12:6 Z6:4 Z8:4 M2(Z2):2 Zp:2".into())
}

fn is_prime_power(mut n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn criterion_6(corpus: &Corpus) -> Outcome {
    let query = "completely_nilary and unital and not prime_power_char";
    let run = nilary(&["hunt", "--builtin", "--target", "zero", "--json", query]);
    let matches = run.json["matches"].as_array().ok_or("no match list")?.len();
    ensure(run.code == 1 && matches == 0, || format!("exit {}, {matches} matches", run.code))?;
    let mut hypothesis = 0;
    for e in corpus.entries.iter() {
        let r = e.ring();
        let Some(one) = r.one().filter(|_| r.order() > 1) else { continue };
        if !e.classifier.verdict(&e.classifier.zero_ideal(), Predicate::CompletelyNilary).unwrap().holds {
            continue;
        }
        hypothesis += 1;
        let (mut x, mut char) = (one, 1u64);
        while x != 0 {
            x = r.add(x, one);
            char += 1;
        }
        ensure(is_prime_power(char), || format!("{}: characteristic {char}", e.spec))?;
    }
    ensure(hypothesis > 0, || "no unital completely nilary ring in the corpus".into())?;
    Ok(format!("hunt: 0 matches; {hypothesis} unital completely nilary rings all of prime-power characteristic"))
}

fn criterion_7(corpus: &Corpus) -> Outcome {
    let mut replayed = 0usize;
    let mut counter = 0usize;
    for e in &corpus.entries {
        let replay = Replayer::new(e.ring());
        for report in e.classifier.full_report().map_err(|x| x.to_string())? {
            for (p, v) in &report.verdicts.0 {
                replay.replay(&report.ideal, *p, v).map_err(|f| f.to_string())?;
                replayed += 1;
                counter += usize::from(!v.holds && !v.na);
            }
        }
    }
    // the witnesses printed for criteria 1 and 2 come from the same classifier
    // and were checked there with stand-alone arithmetic
    Ok(format!("{replayed} verdicts replayed ({counter} counter-witnesses), 0 failures"))
}

fn criterion_8(corpus: &Corpus) -> Outcome {
    use Predicate::*;
    let chains: [&[Predicate]; 2] = [
        &[CompletelyPrime, CompletelyRightPrimary, CompletelyNilary],
        &[Prime, RightPrimary, Nilary, PNilary, WeaklyPNilary],
    ];
    let mut instances = 0;
    for e in &corpus.entries {
        for report in e.classifier.full_report().map_err(|x| x.to_string())? {
            if !report.proper {
                continue;
            }
            instances += 1;
            for chain in chains {
                for step in chain.windows(2) {
                    ensure(!report.holds(step[0]) || report.holds(step[1]), || {
                        format!("{} I={:?}: {} without {}", report.ring, report.ideal, step[0], step[1])
                    })?;
                }
            }
        }
    }
    Ok(format!("{instances} proper ideals, cP⟹cRP⟹cN and P⟹RP⟹N⟹pN⟹wpN, 0 violations"))
}

fn main() {
    let corpus = Corpus::builtin();
    let criteria: [(&str, &dyn Fn() -> Outcome); 8] = [
        ("1 Z_6 zero ideal weakly nilary, not nilary", &criterion_1),
        ("2 M_2(Z_2) zero ideal classification", &criterion_2),
        ("3 theorem harness over builtin corpus", &criterion_3),
        ("4 lattice enumeration matches subset scan", &|| criterion_4(&corpus)),
        ("5 ideal counts", &criterion_5),
        ("6 characteristic of unital completely nilary rings", &|| criterion_6(&corpus)),
        ("7 witness replay", &|| criterion_7(&corpus)),
        ("8 predicate hierarchy sweep", &|| criterion_8(&corpus)),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
}
