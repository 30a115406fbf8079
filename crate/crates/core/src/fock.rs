//! Creation/annihilation split `V = V⁺ ⊕ V⁻` and normal ordering.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Element, Monomial, TensorElement};
use crate::error::Error;
use crate::scalar::Scalar;

/// Tags each generator as creation or annihilation, with an involution `*`
/// exchanging the two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockStructure {
    creation: BTreeSet<usize>,
    annihilation: BTreeSet<usize>,
    partner: BTreeMap<usize, usize>,
}

impl FockStructure {
    /// `pairs` lists `(creation, annihilation)` partners; every generator in
    /// `1..=dim` must appear exactly once.
    pub fn new(dim: usize, pairs: &[(usize, usize)]) -> Result<Self, Error> {
        let mut creation = BTreeSet::new();
        let mut annihilation = BTreeSet::new();
        let mut partner = BTreeMap::new();
        for &(c, a) in pairs {
            for k in [c, a] {
                if !(1..=dim).contains(&k) {
                    return Err(Error::InvalidFock(format!("generator e{k} outside 1..={dim}")));
                }
                if partner.contains_key(&k) {
                    return Err(Error::InvalidFock(format!("generator e{k} listed twice")));
                }
            }
            if c == a {
                return Err(Error::InvalidFock(format!("e{c} cannot be its own partner")));
            }
            creation.insert(c);
            annihilation.insert(a);
            partner.insert(c, a);
            partner.insert(a, c);
        }
        if partner.len() != dim {
            let missing: Vec<String> = (1..=dim)
                .filter(|k| !partner.contains_key(k))
                .map(|k| format!("e{k}"))
                .collect();
            return Err(Error::InvalidFock(format!(
                "generators not covered: {}",
                missing.join(", ")
            )));
        }
        Ok(FockStructure {
            creation,
            annihilation,
            partner,
        })
    }

    pub fn creation(&self) -> &BTreeSet<usize> {
        &self.creation
    }

    pub fn annihilation(&self) -> &BTreeSet<usize> {
        &self.annihilation
    }

    pub fn partner(&self, k: usize) -> Option<usize> {
        self.partner.get(&k).copied()
    }

    pub fn is_creation(&self, k: usize) -> bool {
        self.creation.contains(&k)
    }

    fn project(u: &Element, keep: &BTreeSet<usize>) -> Element {
        Element::from_terms(
            u.terms()
                .filter(|(m, _)| m.counts().iter().all(|(k, _)| keep.contains(k)))
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// P: the algebra morphism killing every annihilation generator.
    pub fn project_plus(&self, u: &Element) -> Element {
        Self::project(u, &self.creation)
    }

    /// M: the algebra morphism killing every creation generator.
    pub fn project_minus(&self, u: &Element) -> Element {
        Self::project(u, &self.annihilation)
    }

    /// φ(u) = Σ P(u_(1)) ⊗ M(u_(2)): creation part on the left, annihilation
    /// part on the right.
    pub fn phi(&self, u: &Element) -> TensorElement {
        let mut out = TensorElement::zero();
        for (l, r, c) in u.sweedler() {
            let keep_l = l.counts().iter().all(|(k, _)| self.creation.contains(k));
            let keep_r = r.counts().iter().all(|(k, _)| self.annihilation.contains(k));
            if keep_l && keep_r {
                out.add_term(l, r, c);
            }
        }
        out
    }

    /// `u*`: swaps partners and conjugates coefficients.
    pub fn involute(&self, u: &Element) -> Element {
        Element::from_terms(u.terms().map(|(m, c)| {
            let swapped = Monomial::from_counts(
                m.counts()
                    .iter()
                    .map(|&(k, n)| (self.partner(k).unwrap_or(k), n)),
            );
            (swapped, c.conj())
        }))
    }
}

/// ⟨0|u|0⟩, which is the counit.
pub fn vacuum_expectation(u: &Element) -> Scalar {
    u.counit()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// e1, e2 create; e3 = e1*, e4 = e2*.
    fn fock() -> FockStructure {
        FockStructure::new(4, &[(1, 3), (2, 4)]).unwrap()
    }

    fn e(k: usize) -> Element {
        Element::generator(k)
    }

    #[test]
    fn validation() {
        assert!(FockStructure::new(3, &[(1, 2)]).is_err());
        assert!(FockStructure::new(2, &[(1, 1)]).is_err());
        assert!(FockStructure::new(2, &[(1, 3)]).is_err());
        assert!(FockStructure::new(4, &[(1, 3), (3, 4)]).is_err());
    }

    #[test]
    fn projectors() {
        let f = fock();
        assert_eq!(f.project_plus(&e(1)), e(1));
        assert!(f.project_plus(&e(3)).is_zero());
        assert!(f.project_plus(&Element::from_indices([1, 3])).is_zero());
        assert_eq!(f.project_plus(&Element::one()), Element::one());
        assert_eq!(f.project_minus(&e(4)), e(4));
    }

    #[test]
    fn phi_examples() {
        let f = fock();
        let got = f.phi(&Element::from_indices([1, 3]));
        assert_eq!(got, TensorElement::tensor(&e(1), &e(3)));
        assert_eq!(f.phi(&Element::one()), TensorElement::tensor(&Element::one(), &Element::one()));
        let cc = Element::from_indices([1, 2]);
        assert_eq!(f.phi(&cc), TensorElement::tensor(&cc, &Element::one()));
    }

    #[test]
    fn involution() {
        let f = fock();
        assert_eq!(f.involute(&e(1)), e(3));
        let u = e(1).scale(&Scalar::i());
        assert_eq!(f.involute(&u), e(3).scale(&-Scalar::i()));
        let w = Element::from_indices([1, 1, 4]).scale(&Scalar::complex((1, 2), (2, 3))) + e(2);
        assert_eq!(f.involute(&f.involute(&w)), w);
    }

    #[test]
    fn vacuum() {
        assert_eq!(vacuum_expectation(&Element::one()), Scalar::one());
        assert!(vacuum_expectation(&Element::from_indices([1, 2])).is_zero());
    }
}
