use super::{Element, Ring, RingError};
use crate::bitset::ElementSet;
use crate::ideal::{Ideal, IdealKind};

/// A ring homomorphism given by its table.
#[derive(Clone, Debug)]
pub struct Hom {
    source: Ring,
    target: Ring,
    map: Vec<Element>,
    surjective: bool,
}

impl Hom {
    /// Checks additivity and multiplicativity on every pair.
    pub fn new(source: Ring, target: Ring, map: Vec<Element>) -> Result<Hom, RingError> {
        if map.len() != source.order() || map.iter().any(|&y| y >= target.order()) {
            return Err(RingError::Invalid("map table does not fit source/target".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.add(a, b)] != target.add(map[a], map[b])
                    || map[source.mul(a, b)] != target.mul(map[a], map[b])
                {
                    return Err(RingError::Invalid(format!("map is not a homomorphism at ({a}, {b})")));
                }
            }
        }
        let image = ElementSet::from_elements(target.order(), map.iter().copied());
        let surjective = image.len() == target.order();
        Ok(Hom { source, target, map, surjective })
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn apply(&self, a: Element) -> Element {
        self.map[a]
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn image(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_elements(self.target.order(), set.iter().map(|a| self.map[a]))
    }

    pub fn preimage(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_elements(self.source.order(), self.source.elements().filter(|&a| set.contains(self.map[a])))
    }

    pub fn kernel(&self) -> ElementSet {
        self.preimage(&ElementSet::from_elements(self.target.order(), [0]))
    }
}

/// `r / i` on coset representatives (least index in each coset), with the canonical surjection.
pub fn make_quotient(r: &Ring, i: &Ideal) -> Result<(Ring, Hom), RingError> {
    if i.kind() != IdealKind::TwoSided || !r.same_as(i.ring()) || !i.satisfies_axioms() {
        return Err(RingError::NotAnIdeal);
    }
    let members = i.elements();
    let n = r.order();
    let mut rep_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if rep_of[a] == usize::MAX {
            let idx = reps.len();
            reps.push(a);
            for &x in &members {
                rep_of[r.add(a, x)] = idx;
            }
        }
    }
    let m = reps.len();
    let mut add = Vec::with_capacity(m * m);
    let mut mul = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            add.push(rep_of[r.add(a, b)]);
            mul.push(rep_of[r.mul(a, b)]);
        }
    }
    let gens = members.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
    let label = format!("quot({},gen({gens}))", r.label());
    let q = Ring::from_flat(m, add, mul, r.one().map(|u| rep_of[u]), label)?;
    let hom = Hom::new(r.clone(), q.clone(), rep_of)?;
    Ok((q, hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::principal_ideal;
    use crate::ring::{make_zn, validate_ring};

    #[test]
    fn z12_mod_4_is_z4() {
        let z12 = make_zn(12);
        let i = principal_ideal(&z12, 4, IdealKind::TwoSided);
        let (q, hom) = make_quotient(&z12, &i).unwrap();
        assert_eq!(q.order(), 4);
        assert!(validate_ring(&q).is_valid());
        assert!(hom.is_surjective());
        assert_eq!(hom.kernel(), *i.mask());
        // reps 0,1,2,3 behave exactly like Z_4
        let z4 = make_zn(4);
        assert_eq!(q.add_table(), z4.add_table());
        assert_eq!(q.mul_table(), z4.mul_table());
    }

    #[test]
    fn z6_mod_2_is_z2() {
        let z6 = make_zn(6);
        let (q, hom) = make_quotient(&z6, &principal_ideal(&z6, 2, IdealKind::TwoSided)).unwrap();
        assert_eq!(q.mul_table(), make_zn(2).mul_table());
        assert_eq!(q.add_table(), make_zn(2).add_table());
        assert_eq!(hom.apply(5), 1);
    }

    #[test]
    fn zero_kernel_is_relabeling() {
        let z6 = make_zn(6);
        let (q, hom) = make_quotient(&z6, &Ideal::zero(&z6, IdealKind::TwoSided)).unwrap();
        assert_eq!(q.mul_table(), z6.mul_table());
        assert!((0..6).all(|a| hom.apply(a) == a));
    }

    #[test]
    fn rejects_one_sided() {
        let z6 = make_zn(6);
        let i = principal_ideal(&z6, 2, IdealKind::Right);
        assert_eq!(make_quotient(&z6, &i).unwrap_err(), RingError::NotAnIdeal);
    }

    #[test]
    fn hom_rejects_non_homomorphism() {
        let (z4, z2) = (make_zn(4), make_zn(2));
        assert!(Hom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).is_ok());
        assert!(Hom::new(z4, z2, vec![0, 1, 1, 0]).is_err());
    }
}
