use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::{Element, Monomial};
use crate::scalar::Scalar;

/// A finite combination of `m ⊗ m'` pairs: an element of S(V) ⊗ S(V).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn add_term(&mut self, left: Monomial, right: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// `u ⊗ v` for elements.
    pub fn tensor(u: &Element, v: &Element) -> Self {
        let mut out = TensorElement::zero();
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                out.add_term(a.clone(), b.clone(), ca * cb);
            }
        }
        out
    }

    pub fn add_tensor(&mut self, u: &Element, v: &Element, c: &Scalar) {
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                self.add_term(a.clone(), b.clone(), &(ca * cb) * c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &Scalar)> {
        self.terms.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn into_terms(self) -> Vec<(Monomial, Monomial, Scalar)> {
        self.terms.into_iter().map(|((l, r), c)| (l, r, c)).collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, left: &Monomial, right: &Monomial) -> Scalar {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// The flip `u ⊗ v ↦ v ⊗ u`.
    pub fn swap(&self) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(r.clone(), l.clone(), c.clone());
        }
        out
    }

    /// Applies `f ⊗ g` with `f, g` given on monomials.
    pub fn map_slots(
        &self,
        f: impl Fn(&Monomial) -> Element,
        g: impl Fn(&Monomial) -> Element,
    ) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((l, r), c) in &self.terms {
            out.add_tensor(&f(l), &g(r), c);
        }
        out
    }

    /// `(ε ⊗ Id)`: contracts the left slot with the counit.
    pub fn counit_left(&self) -> Element {
        Element::from_terms(
            self.terms
                .iter()
                .filter(|((l, _), _)| l.is_unit())
                .map(|((_, r), c)| (r.clone(), c.clone())),
        )
    }

    /// `(Id ⊗ ε)`.
    pub fn counit_right(&self) -> Element {
        Element::from_terms(
            self.terms
                .iter()
                .filter(|((_, r), _)| r.is_unit())
                .map(|((l, _), c)| (l.clone(), c.clone())),
        )
    }

    /// The multiplication map `m ⊗ m' ↦ m ∨ m'`.
    pub fn multiply(&self) -> Element {
        Element::from_terms(self.terms.iter().map(|((l, r), c)| (l.vee(r), c.clone())))
    }

    /// Componentwise product in the tensor algebra: `(a ⊗ b)(c ⊗ d) = (a∨c) ⊗ (b∨d)`.
    pub fn vee(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                out.add_term(a.vee(c), b.vee(d), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((l, r), d) in &self.terms {
            out.add_term(l.clone(), r.clone(), d * c);
        }
        out
    }

    pub fn add_assign_tensor(&mut self, other: &TensorElement) {
        for ((l, r), c) in &other.terms {
            self.add_term(l.clone(), r.clone(), c.clone());
        }
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::element::write_terms(
            f,
            self.terms.iter(),
            |_| false,
            |(l, r), f| write!(f, "({l} ⊗ {r})"),
        )
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A combination of `k`-fold tensors `m_1 ⊗ … ⊗ m_k`, for iterated coproducts.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct MultiTensor {
    terms: BTreeMap<Vec<Monomial>, Scalar>,
}

impl MultiTensor {
    pub fn add_term(&mut self, slots: Vec<Monomial>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(slots) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn from_element(u: &Element) -> Self {
        let mut out = MultiTensor::default();
        for (m, c) in u.terms() {
            out.add_term(vec![m.clone()], c.clone());
        }
        out
    }

    /// Applies Δ to the given slot, increasing the tensor depth by one.
    pub fn expand_slot(&self, slot: usize) -> MultiTensor {
        let mut out = MultiTensor::default();
        for (slots, c) in &self.terms {
            for (l, r, w) in slots[slot].splits() {
                let mut next = Vec::with_capacity(slots.len() + 1);
                next.extend_from_slice(&slots[..slot]);
                next.push(l);
                next.push(r);
                next.extend_from_slice(&slots[slot + 1..]);
                out.add_term(next, c * &Scalar::from(w));
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial], &Scalar)> {
        self.terms.iter().map(|(s, c)| (s.as_slice(), c))
    }

    pub fn depth(&self) -> Option<usize> {
        self.terms.keys().next().map(Vec::len)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Δ^{(k−1)}u as a `k`-fold tensor, always re-expanding the last slot.
/// `k = 1` returns `u` itself. Panics if `k == 0`.
pub fn iterated_coproduct(u: &Element, k: usize) -> MultiTensor {
    assert!(k >= 1, "iterated coproduct depth must be at least 1");
    let mut t = MultiTensor::from_element(u);
    for depth in 1..k {
        t = t.expand_slot(depth - 1);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(ix: &[usize]) -> Monomial {
        Monomial::from_indices(ix.iter().copied())
    }

    #[test]
    fn coproduct_of_generator() {
        let d = Element::generator(1).coproduct();
        let mut expected = TensorElement::zero();
        expected.add_term(mono(&[1]), Monomial::unit(), Scalar::one());
        expected.add_term(Monomial::unit(), mono(&[1]), Scalar::one());
        assert_eq!(d, expected);
    }

    #[test]
    fn coproduct_of_product_worked_example() {
        let d = Element::from_indices([1, 2]).coproduct();
        assert_eq!(d.num_terms(), 4);
        assert_eq!(d.coefficient(&mono(&[1, 2]), &Monomial::unit()), Scalar::one());
        assert_eq!(d.coefficient(&mono(&[1]), &mono(&[2])), Scalar::one());
        assert_eq!(d.coefficient(&mono(&[2]), &mono(&[1])), Scalar::one());
        assert_eq!(d.coefficient(&Monomial::unit(), &mono(&[1, 2])), Scalar::one());
    }

    #[test]
    fn coproduct_of_square() {
        let d = Element::from_indices([1, 1]).coproduct();
        assert_eq!(d.num_terms(), 3);
        assert_eq!(d.coefficient(&mono(&[1]), &mono(&[1])), Scalar::from(2));
    }

    #[test]
    fn iterated_depths() {
        let e1 = Element::generator(1);
        let two = iterated_coproduct(&e1, 2);
        let expected: Vec<_> = e1
            .coproduct()
            .into_terms()
            .into_iter()
            .map(|(l, r, c)| (vec![l, r], c))
            .collect();
        let got: Vec<_> = two.terms().map(|(s, c)| (s.to_vec(), c.clone())).collect();
        assert_eq!(got, expected);
        let unit = iterated_coproduct(&Element::one(), 3);
        assert_eq!(unit.num_terms(), 1);
        let (slots, c) = unit.terms().next().unwrap();
        assert!(slots.iter().all(Monomial::is_unit) && c.is_one());
        assert_eq!(iterated_coproduct(&e1, 1), MultiTensor::from_element(&e1));
    }

    #[test]
    fn slot_independence_at_depth_three() {
        let u = Element::from_indices([1, 2]);
        let base = MultiTensor::from_element(&u).expand_slot(0);
        assert_eq!(base.expand_slot(0), base.expand_slot(1));
    }
}
