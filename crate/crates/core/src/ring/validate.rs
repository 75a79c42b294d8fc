use serde::Serialize;

use super::{Element, Ring};

/// One failed ring axiom, with the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum AxiomViolation {
    AddAssociativity { a: Element, b: Element, c: Element },
    AddCommutativity { a: Element, b: Element },
    MulAssociativity { a: Element, b: Element, c: Element },
    LeftDistributivity { a: Element, b: Element, c: Element },
    RightDistributivity { a: Element, b: Element, c: Element },
    Unity { one: Element, a: Element },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustive axiom scan over all pairs and triples.
///
/// The additive identity and negatives are already enforced by [`Ring::from_flat`].
pub fn validate_ring(r: &Ring) -> ValidationReport {
    use AxiomViolation::*;
    let n = r.order();
    let mut violations = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if b > a && r.add(a, b) != r.add(b, a) {
                violations.push(AddCommutativity { a, b });
            }
            for c in 0..n {
                if r.add(r.add(a, b), c) != r.add(a, r.add(b, c)) {
                    violations.push(AddAssociativity { a, b, c });
                }
                if r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)) {
                    violations.push(MulAssociativity { a, b, c });
                }
                if r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)) {
                    violations.push(LeftDistributivity { a, b, c });
                }
                if r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c)) {
                    violations.push(RightDistributivity { a, b, c });
                }
            }
        }
    }
    if let Some(one) = r.one() {
        for a in 0..n {
            if r.mul(one, a) != a || r.mul(a, one) != a {
                violations.push(Unity { one, a });
            }
        }
    }
    ValidationReport { violations }
}
