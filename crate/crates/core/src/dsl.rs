//! Text descriptions of rings.
//!
//! ```text
//! spec := "Zn:" n | "zmul:" n | "M:" k ":" spec | "T:" k ":" spec
//!       | "dsum(" spec "," spec ")" | "quot(" spec ",gen(" e ("," e)* "))"
//!       | "file:" path
//! ```
//!
//! A table file holds the order on its first line, then `order` rows of the
//! addition table, `order` rows of the multiplication table, and optionally a
//! final `one <index>` line. Blank lines are ignored.

use std::path::Path;

use thiserror::Error;

use crate::ideal::{ideal_generated_by, IdealKind};
use crate::ring::{
    make_direct_sum, make_matrix_ring, make_quotient, make_upper_triangular, make_zero_mul, make_zn, validate_ring,
    Ring, RingError, DEFAULT_MAX_ORDER,
};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("table file, line {line}: {msg}")]
    Table { line: usize, msg: String },
}

pub fn parse_ring_spec(text: &str) -> Result<Ring, SpecError> {
    parse_ring_spec_with(text, DEFAULT_MAX_ORDER)
}

/// Parses and evaluates a spec, refusing any intermediate ring above `cap` elements.
pub fn parse_ring_spec_with(text: &str, cap: usize) -> Result<Ring, SpecError> {
    let mut p = Parser { src: text, pos: 0, cap };
    let ring = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(ring)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    cap: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> SpecError {
        SpecError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SpecError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected {token:?}")))
        }
    }

    fn number(&mut self) -> Result<usize, SpecError> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a number"));
        }
        let value = self.rest()[..digits].parse().map_err(|_| self.error("number too large"))?;
        self.pos += digits;
        Ok(value)
    }

    fn positive(&mut self) -> Result<usize, SpecError> {
        let at = self.pos;
        let n = self.number()?;
        if n == 0 {
            return Err(SpecError::Parse { pos: at, msg: "size must be at least 1".into() });
        }
        if n > self.cap {
            return Err(RingError::SizeCap { requested: n as u128, cap: self.cap }.into());
        }
        Ok(n)
    }

    fn spec(&mut self) -> Result<Ring, SpecError> {
        if self.eat("Zn:") {
            Ok(make_zn(self.positive()?))
        } else if self.eat("zmul:") {
            Ok(make_zero_mul(self.positive()?))
        } else if let Some(triangular) = self.matrix_prefix() {
            let k = self.positive()?;
            self.expect(":")?;
            let base = self.spec()?;
            let ring = if triangular {
                make_upper_triangular(&base, k, self.cap)?
            } else {
                make_matrix_ring(&base, k, self.cap)?
            };
            Ok(ring)
        } else if self.eat("dsum(") {
            let a = self.spec()?;
            self.expect(",")?;
            let b = self.spec()?;
            self.expect(")")?;
            Ok(make_direct_sum(&a, &b, self.cap)?)
        } else if self.eat("quot(") {
            let base = self.spec()?;
            self.expect(",")?;
            self.expect("gen(")?;
            let mut gens = Vec::new();
            loop {
                let at = self.pos;
                let e = self.number()?;
                if e >= base.order() {
                    return Err(SpecError::Parse {
                        pos: at,
                        msg: format!("generator {e} outside ring of order {}", base.order()),
                    });
                }
                gens.push(e);
                if !self.eat(",") {
                    break;
                }
            }
            self.expect(")")?;
            self.expect(")")?;
            let ideal = ideal_generated_by(&base, gens.iter().copied(), IdealKind::TwoSided);
            let (q, _) = make_quotient(&base, &ideal)?;
            let list = gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",");
            Ok(q.relabeled(format!("quot({},gen({list}))", base.label())))
        } else if self.eat("file:") {
            self.skip_ws();
            let len = self.rest().find([',', ')']).unwrap_or(self.rest().len());
            let path = self.rest()[..len].trim_end().to_string();
            if path.is_empty() {
                return Err(self.error("expected a file path"));
            }
            self.pos += len;
            let ring = load_ring_file(Path::new(&path))?;
            if ring.order() > self.cap {
                return Err(RingError::SizeCap { requested: ring.order() as u128, cap: self.cap }.into());
            }
            Ok(ring.relabeled(format!("file:{path}")))
        } else {
            Err(self.error("expected Zn:, zmul:, M:, T:, dsum(, quot( or file:"))
        }
    }

    /// `Some(false)` after `M:`, `Some(true)` after `T:`.
    fn matrix_prefix(&mut self) -> Option<bool> {
        if self.eat("M:") {
            Some(false)
        } else if self.eat("T:") {
            Some(true)
        } else {
            None
        }
    }
}

/// Reads a ring table file and checks every ring axiom.
pub fn load_ring_file(path: &Path) -> Result<Ring, SpecError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SpecError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    parse_ring_table(&text, &path.display().to_string())
}

/// Parses the table format; the ring is labelled `label`.
pub fn parse_ring_table(text: &str, label: &str) -> Result<Ring, SpecError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let table_err = |line, msg: String| SpecError::Table { line, msg };

    let (line, first) = lines.next().ok_or_else(|| table_err(1, "empty file".into()))?;
    let order: usize = first.parse().map_err(|_| table_err(line, format!("expected the ring order, got {first:?}")))?;
    if order == 0 {
        return Err(table_err(line, "order must be at least 1".into()));
    }

    let mut read_table = |name: &str| -> Result<Vec<usize>, SpecError> {
        let mut flat = Vec::with_capacity(order * order);
        for row in 0..order {
            let (line, l) = lines.next().ok_or_else(|| table_err(0, format!("{name} table ends after {row} rows")))?;
            let entries: Vec<usize> = l
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| table_err(line, format!("bad entry {t:?}"))))
                .collect::<Result<_, _>>()?;
            if entries.len() != order {
                return Err(table_err(line, format!("expected {order} entries, got {}", entries.len())));
            }
            flat.extend(entries);
        }
        Ok(flat)
    };
    let add = read_table("addition")?;
    let mul = read_table("multiplication")?;

    let mut one = None;
    if let Some((line, l)) = lines.next() {
        let idx = l
            .strip_prefix("one")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| table_err(line, format!("expected `one <index>`, got {l:?}")))?;
        one = Some(idx);
        if let Some((line, l)) = lines.next() {
            return Err(table_err(line, format!("unexpected trailing line {l:?}")));
        }
    }

    let ring = Ring::from_flat(order, add, mul, one, label)?;
    let report = validate_ring(&ring);
    if let Some(v) = report.violations.first() {
        return Err(RingError::Invalid(format!("{} violation(s), first: {v:?}", report.violations.len())).into());
    }
    Ok(ring)
}

/// Writes `r` in the table format.
pub fn format_ring_table(r: &Ring) -> String {
    let mut out = format!("{}\n", r.order());
    for table in [r.add_table(), r.mul_table()] {
        for row in table.chunks(r.order()) {
            let cells: Vec<_> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    if let Some(u) = r.one() {
        out.push_str(&format!("one {u}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::principal_ideal;

    #[test]
    fn simple_specs() {
        let z6 = parse_ring_spec("Zn:6").unwrap();
        assert_eq!(z6.mul_table(), make_zn(6).mul_table());
        assert_eq!(z6.label(), "Zn:6");
        let m = parse_ring_spec("M:2:Zn:2").unwrap();
        assert_eq!(m.mul_table(), make_matrix_ring(&make_zn(2), 2, 4096).unwrap().mul_table());
        assert_eq!(m.label(), "M:2:Zn:2");
        assert_eq!(parse_ring_spec("T:2:Zn:3").unwrap().order(), 27);
        assert_eq!(parse_ring_spec("zmul:4").unwrap().one(), None);
        assert_eq!(parse_ring_spec(" dsum( Zn:2 , Zn:3 ) ").unwrap().order(), 6);
    }

    #[test]
    fn quotient_spec() {
        let q = parse_ring_spec("quot(Zn:12,gen(4))").unwrap();
        let z12 = make_zn(12);
        let (direct, _) = make_quotient(&z12, &principal_ideal(&z12, 4, IdealKind::TwoSided)).unwrap();
        assert_eq!(q.mul_table(), direct.mul_table());
        assert_eq!(q.label(), "quot(Zn:12,gen(4))");
        assert_eq!(parse_ring_spec("quot(Zn:12,gen(4,6))").unwrap().order(), 2);
    }

    #[test]
    fn quotient_label_reparses() {
        let z12 = make_zn(12);
        let (q, _) = make_quotient(&z12, &principal_ideal(&z12, 6, IdealKind::TwoSided)).unwrap();
        let again = parse_ring_spec(q.label()).unwrap();
        assert_eq!(again.mul_table(), q.mul_table());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_ring_spec("dsum(Zn:2;Zn:3)") {
            Err(SpecError::Parse { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_ring_spec("Zn:0"), Err(SpecError::Parse { pos: 3, .. })));
        assert!(matches!(parse_ring_spec("Q:5"), Err(SpecError::Parse { pos: 0, .. })));
        assert!(matches!(parse_ring_spec("Zn:6 x"), Err(SpecError::Parse { .. })));
        assert!(matches!(parse_ring_spec("quot(Zn:6,gen(9))"), Err(SpecError::Parse { .. })));
        assert!(matches!(
            parse_ring_spec_with("M:2:Zn:4", 100),
            Err(SpecError::Ring(RingError::SizeCap { requested: 256, cap: 100 }))
        ));
    }

    #[test]
    fn table_round_trip_through_file() {
        let m = make_upper_triangular(&make_zn(2), 2, 64).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t2.txt");
        std::fs::write(&path, format_ring_table(&m)).unwrap();
        let loaded = parse_ring_spec(&format!("file:{}", path.display())).unwrap();
        assert_eq!(loaded.add_table(), m.add_table());
        assert_eq!(loaded.mul_table(), m.mul_table());
        assert_eq!(loaded.one(), m.one());
        let wrapped = parse_ring_spec(&format!("dsum(file:{},Zn:1)", path.display())).unwrap();
        assert_eq!(wrapped.order(), 8);
    }

    #[test]
    fn table_rejects_bad_input() {
        // 1 is the additive identity, not 0
        let bad_zero = "2\n1 0\n0 1\n0 0\n0 0\n";
        assert!(matches!(parse_ring_table(bad_zero, "x"), Err(SpecError::Ring(RingError::ZeroNotIdentity(_)))));
        // non-distributive multiplication on Z_2
        let bad_mul = "2\n0 1\n1 0\n0 1\n1 1\n";
        assert!(matches!(parse_ring_table(bad_mul, "x"), Err(SpecError::Ring(RingError::Invalid(_)))));
        assert!(matches!(parse_ring_table("2\n0 1\n", "x"), Err(SpecError::Table { .. })));
        assert!(matches!(parse_ring_table("2\n0 1\n1 0\n0 0\n0 1\none 1\nextra\n", "x"), Err(SpecError::Table { .. })));
        let ok = parse_ring_table("2\n0 1\n1 0\n0 0\n0 1\none 1\n", "z2").unwrap();
        assert_eq!(ok.one(), Some(1));
    }
}
