//! Fixed-width text output.

use std::fmt::Write;

use nilary_core::hunt::HuntReport;
use nilary_core::ring::characteristic;
use nilary_core::theorems::HarnessReport;
use nilary_core::{IdealLattice, Predicate, PropertyReport, Ring};
use serde_json::json;

/// Ideal elements as `{0,2,4}`, elided past a readable width.
fn set(elements: &[usize]) -> String {
    const SHOWN: usize = 12;
    let mut parts: Vec<String> = elements.iter().take(SHOWN).map(|e| e.to_string()).collect();
    if elements.len() > SHOWN {
        parts.push(format!("..+{}", elements.len() - SHOWN));
    }
    format!("{{{}}}", parts.join(","))
}

fn ring_header(r: &Ring) -> String {
    let char = match characteristic(r) {
        Ok(c) => c.value.to_string(),
        Err(_) => "-".into(),
    };
    format!(
        "ring {}  order {}  commutative {}  unital {}  char {}",
        r.label(),
        r.order(),
        yn(r.is_commutative()),
        yn(r.one().is_some()),
        char
    )
}

fn yn(b: bool) -> &'static str {
    if b {
        "Y"
    } else {
        "n"
    }
}

pub fn classify_table(r: &Ring, reports: &[PropertyReport]) -> String {
    let width = reports.iter().map(|rep| set(&rep.ideal).len()).max().unwrap_or(0).max(5);
    let mut out = ring_header(r);
    out.push('\n');
    write!(out, "{:<width$} {:>5} {:>4}", "ideal", "size", "prop").unwrap();
    for p in Predicate::ALL {
        write!(out, " {:>3}", p.abbrev()).unwrap();
    }
    for rep in reports {
        write!(out, "\n{:<width$} {:>5} {:>4}", set(&rep.ideal), rep.ideal.len(), yn(rep.proper)).unwrap();
        for (_, v) in &rep.verdicts.0 {
            let cell = if v.na { "-" } else { yn(v.holds) };
            write!(out, " {cell:>3}").unwrap();
        }
    }
    out
}

pub fn ideals_table(r: &Ring, lattice: &IdealLattice, oracle: Option<bool>) -> String {
    let mut out = format!("{}\n{} {} ideals\n", ring_header(r), lattice.len(), lattice.kind().as_str());
    write!(out, "{:>4} {:>5}  elements", "#", "size").unwrap();
    for (n, i) in lattice.iter().enumerate() {
        write!(out, "\n{n:>4} {:>5}  {}", i.len(), set(&i.elements())).unwrap();
    }
    match oracle {
        Some(true) => out.push_str("\noracle: agrees with subset enumeration"),
        Some(false) => out.push_str("\noracle: MISMATCH with subset enumeration"),
        None => {}
    }
    out
}

pub fn ideals_json(r: &Ring, lattice: &IdealLattice, oracle: Option<bool>) -> String {
    let ideals: Vec<_> = lattice.iter().map(|i| json!({ "size": i.len(), "elements": i.elements() })).collect();
    let doc = json!({
        "ring": r.label(),
        "order": r.order(),
        "kind": lattice.kind().as_str(),
        "count": lattice.len(),
        "ideals": ideals,
        "oracle": oracle,
    });
    serde_json::to_string_pretty(&doc).expect("plain JSON values")
}

pub fn harness_table(report: &HarnessReport) -> String {
    let width = report.cases.iter().map(|c| c.id.len()).max().unwrap_or(2).max(4);
    let mut out =
        format!("{:<width$}  {:<4} {:>9} {:>10} {:>10}", "case", "pass", "instances", "hypothesis", "violations");
    for c in &report.cases {
        write!(
            out,
            "\n{:<width$}  {:<4} {:>9} {:>10} {:>10}",
            c.id,
            if c.pass { "ok" } else { "FAIL" },
            c.instances,
            c.hypothesis_instances,
            c.violations.len()
        )
        .unwrap();
    }
    for c in report.cases.iter().filter(|c| !c.pass) {
        write!(out, "\n\n{} ({}):", c.id, c.description).unwrap();
        for v in &c.violations {
            write!(out, "\n  {}", v.instance).unwrap();
        }
    }
    let failed = report.cases.iter().filter(|c| !c.pass).count();
    write!(out, "\n\n{} rings, {} cases, {} failed", report.corpus.rings.len(), report.cases.len(), failed).unwrap();
    out
}

pub fn hunt_lines(report: &HuntReport) -> String {
    let mut out = format!("query {}", report.query);
    for m in &report.matches {
        write!(out, "\n{}  {}", m.ring, set(&m.ideal)).unwrap();
    }
    write!(out, "\n{} matches among {} pairs", report.matches.len(), report.pairs_checked).unwrap();
    out
}
