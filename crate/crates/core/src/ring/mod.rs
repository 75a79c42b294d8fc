//! Finite rings stored as Cayley tables.
//!
//! Elements are indices `0..order`; index 0 is always the additive zero. Rings
//! need not be commutative and need not have a unity.

mod build;
mod hom;
mod validate;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use build::{make_direct_sum, make_matrix_ring, make_upper_triangular, make_zero_mul, make_zn, DEFAULT_MAX_ORDER};
pub use hom::{make_quotient, Hom};
pub use validate::{validate_ring, AxiomViolation, ValidationReport};

/// Index of a ring element. `0` is the additive zero.
pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring order must be at least 1")]
    EmptyRing,
    #[error("{table} table has wrong shape: expected {expected} entries, got {got}")]
    BadShape { table: &'static str, expected: usize, got: usize },
    #[error("{table} table entry at ({row}, {col}) is {value}, outside 0..{order}")]
    EntryOutOfRange { table: &'static str, row: usize, col: usize, value: usize, order: usize },
    #[error("element 0 is not the additive zero (0 + {0} != {0})")]
    ZeroNotIdentity(Element),
    #[error("element {0} has no additive inverse")]
    NoNegative(Element),
    #[error("unity index {0} is out of range")]
    UnityOutOfRange(Element),
    #[error("construction of order {requested} exceeds size cap {cap}")]
    SizeCap { requested: u128, cap: usize },
    #[error("{0} requires a ring with unity")]
    UnityRequired(&'static str),
    #[error("ring fails axioms: {0}")]
    Invalid(String),
    #[error("subset is not a two-sided ideal")]
    NotAnIdeal,
}

struct Tables {
    order: usize,
    add: Vec<Element>,
    mul: Vec<Element>,
    neg: Vec<Element>,
    one: Option<Element>,
    label: String,
}

/// A finite ring. Cloning is cheap: the tables are shared.
#[derive(Clone)]
pub struct Ring {
    inner: Arc<Tables>,
}

impl Ring {
    /// Builds a ring from flat row-major tables.
    ///
    /// Checks shape, entry range, that element 0 is an additive identity, and
    /// that every element has a negative. Full axiom checks live in
    /// [`validate_ring`].
    pub fn from_flat(
        order: usize,
        add: Vec<Element>,
        mul: Vec<Element>,
        one: Option<Element>,
        label: impl Into<String>,
    ) -> Result<Ring, RingError> {
        if order == 0 {
            return Err(RingError::EmptyRing);
        }
        let cells = order * order;
        for (table, t) in [("addition", &add), ("multiplication", &mul)] {
            if t.len() != cells {
                return Err(RingError::BadShape { table, expected: cells, got: t.len() });
            }
            if let Some(pos) = t.iter().position(|&v| v >= order) {
                return Err(RingError::EntryOutOfRange {
                    table,
                    row: pos / order,
                    col: pos % order,
                    value: t[pos],
                    order,
                });
            }
        }
        if let Some(u) = one {
            if u >= order {
                return Err(RingError::UnityOutOfRange(u));
            }
        }
        for a in 0..order {
            if add[a] != a || add[a * order] != a {
                return Err(RingError::ZeroNotIdentity(a));
            }
        }
        let mut neg = vec![0; order];
        for a in 0..order {
            neg[a] = (0..order).find(|&b| add[a * order + b] == 0).ok_or(RingError::NoNegative(a))?;
        }
        Ok(Ring { inner: Arc::new(Tables { order, add, mul, neg, one, label: label.into() }) })
    }

    /// Builds a ring from nested tables (one `Vec` per row).
    pub fn from_tables(
        add: Vec<Vec<Element>>,
        mul: Vec<Vec<Element>>,
        one: Option<Element>,
        label: impl Into<String>,
    ) -> Result<Ring, RingError> {
        let order = add.len();
        for (table, t) in [("addition", &add), ("multiplication", &mul)] {
            if t.len() != order {
                return Err(RingError::BadShape { table, expected: order, got: t.len() });
            }
            if let Some(row) = t.iter().find(|r| r.len() != order) {
                return Err(RingError::BadShape { table, expected: order, got: row.len() });
            }
        }
        let flat = |t: Vec<Vec<Element>>| t.into_iter().flatten().collect::<Vec<_>>();
        Ring::from_flat(order, flat(add), flat(mul), one, label)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.inner.order
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        self.inner.add[a * self.inner.order + b]
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.inner.mul[a * self.inner.order + b]
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        self.inner.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    pub fn one(&self) -> Option<Element> {
        self.inner.one
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.inner.order
    }

    /// Row-major addition table.
    pub fn add_table(&self) -> &[Element] {
        &self.inner.add
    }

    /// Row-major multiplication table.
    pub fn mul_table(&self) -> &[Element] {
        &self.inner.mul
    }

    /// Returns a copy of this ring carrying a different label.
    pub fn relabeled(&self, label: impl Into<String>) -> Ring {
        let t = &self.inner;
        Ring {
            inner: Arc::new(Tables {
                order: t.order,
                add: t.add.clone(),
                mul: t.mul.clone(),
                neg: t.neg.clone(),
                one: t.one,
                label: label.into(),
            }),
        }
    }

    /// Same ring: shared storage or identical tables.
    pub fn same_as(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.order == other.inner.order
                && self.inner.add == other.inner.add
                && self.inner.mul == other.inner.mul)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `a^n` for `n >= 1`.
    pub fn pow(&self, a: Element, n: u32) -> Element {
        assert!(n >= 1, "exponents start at 1");
        (1..n).fold(a, |acc, _| self.mul(acc, a))
    }

    /// Least `n >= 1` with `a^n = 0`.
    pub fn nilpotency_index(&self, a: Element) -> Option<u32> {
        self.least_power_where(a, |p| p == 0)
    }

    /// Least `n >= 1` with `pred(a^n)`, found by walking powers until they cycle.
    pub(crate) fn least_power_where(&self, a: Element, pred: impl Fn(Element) -> bool) -> Option<u32> {
        let mut seen = crate::bitset::ElementSet::empty(self.order());
        let mut p = a;
        let mut n = 1u32;
        loop {
            if pred(p) {
                return Some(n);
            }
            if !seen.insert(p) {
                return None;
            }
            p = self.mul(p, a);
            n += 1;
        }
    }

    /// Additive order of `a`.
    pub fn additive_order(&self, a: Element) -> u64 {
        let mut k = 1u64;
        let mut x = a;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("label", &self.label())
            .field("order", &self.order())
            .field("one", &self.one())
            .finish()
    }
}

/// `element_is_nilpotent`: least `n >= 1` with `a^n = 0`.
pub fn element_is_nilpotent(r: &Ring, a: Element) -> Option<u32> {
    r.nilpotency_index(a)
}

/// Additive order of the unity together with its prime factorisation.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Characteristic {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Characteristic {
    /// `p^β` with `β >= 1`.
    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }
}

pub fn characteristic(r: &Ring) -> Result<Characteristic, RingError> {
    let one = r.one().ok_or(RingError::UnityRequired("characteristic"))?;
    let value = r.additive_order(one);
    Ok(Characteristic { value, factors: factorize(value) })
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zn_arithmetic() {
        let z4 = make_zn(4);
        assert_eq!(z4.add(2, 3), 1);
        assert_eq!(z4.mul(2, 2), 0);
        assert_eq!(z4.neg(1), 3);
    }

    #[test]
    fn nilpotency() {
        assert_eq!(element_is_nilpotent(&make_zn(4), 2), Some(2));
        assert_eq!(element_is_nilpotent(&make_zn(6), 2), None);
        for r in [make_zn(1), make_zn(6), make_zero_mul(3)] {
            assert_eq!(element_is_nilpotent(&r, 0), Some(1));
        }
    }

    #[test]
    fn characteristic_values() {
        let c4 = characteristic(&make_zn(4)).unwrap();
        assert_eq!((c4.value, c4.factors.clone()), (4, vec![(2, 2)]));
        assert!(c4.is_prime_power());
        let c6 = characteristic(&make_zn(6)).unwrap();
        assert_eq!(c6.factors, vec![(2, 1), (3, 1)]);
        assert!(!c6.is_prime_power());
        let m2 = make_matrix_ring(&make_zn(2), 2, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(characteristic(&m2).unwrap().value, 2);
        assert_eq!(characteristic(&make_zn(1)).unwrap().value, 1);
        assert_eq!(characteristic(&make_zero_mul(4)), Err(RingError::UnityRequired("characteristic")));
    }

    #[test]
    fn characteristic_of_zn_is_n() {
        for n in 2..=60 {
            assert_eq!(characteristic(&make_zn(n)).unwrap().value, n as u64);
        }
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn rejects_nonzero_identity() {
        // addition where 1 acts as identity instead of 0
        let add = vec![vec![1, 0], vec![0, 1]];
        let mul = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(Ring::from_tables(add, mul, None, "bad"), Err(RingError::ZeroNotIdentity(_))));
    }

    #[test]
    fn rejects_ragged_tables() {
        let add = vec![vec![0, 1], vec![1]];
        let mul = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(Ring::from_tables(add, mul, None, "bad"), Err(RingError::BadShape { .. })));
    }
}
