use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Monomial, TensorElement};
use crate::par;
use crate::scalar::Scalar;

/// A finite linear combination of monomials: an element of S(V).
///
/// Zero coefficients are never stored, so structural equality is equality in
/// the algebra.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Element::term(Monomial::unit(), c)
    }

    pub fn generator(k: usize) -> Self {
        Element::from(Monomial::generator(k))
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    /// `e_{i1} ∨ … ∨ e_{in}`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Element::from(Monomial::from_indices(indices))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(terms: I) -> Self {
        let mut e = Element::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add_assign_element(&mut self, other: &Element) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_vec(&self) -> Vec<(Monomial, Scalar)> {
        self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Highest grading present; `None` for zero.
    pub fn grading(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::grading).max()
    }

    pub fn max_generator(&self) -> usize {
        self.terms.keys().map(Monomial::max_generator).max().unwrap_or(0)
    }

    /// The component in `S^n(V)`.
    pub fn homogeneous(&self, n: usize) -> Element {
        self.filter(|m| m.grading() == n)
    }

    /// Drops all terms of grading above `max`.
    pub fn truncate(&self, max: usize) -> Element {
        self.filter(|m| m.grading() <= max)
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The scalar value if this element lies in `S^0(V)`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::unit()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        Element::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Linear extension of a map defined on monomials.
    pub fn map_linear<F>(&self, f: F) -> Element
    where
        F: Fn(&Monomial) -> Element + Sync + Send,
    {
        let items: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        par::sum_elements(&items, |(m, c)| f(m).scale(c))
    }

    /// Linear extension of a functional defined on monomials.
    pub fn eval_linear<F>(&self, f: F) -> Scalar
    where
        F: Fn(&Monomial) -> Scalar + Sync + Send,
    {
        self.terms
            .iter()
            .map(|(m, c)| {
                let v = f(m);
                if v.is_zero() {
                    v
                } else {
                    v * c
                }
            })
            .sum()
    }

    /// Bilinear extension of a map defined on pairs of monomials.
    pub fn bilinear<F>(u: &Element, v: &Element, f: F) -> Element
    where
        F: Fn(&Monomial, &Monomial) -> Element + Sync + Send,
    {
        let pairs: Vec<_> = u
            .terms
            .iter()
            .flat_map(|a| v.terms.iter().map(move |b| (a, b)))
            .collect();
        par::sum_elements(&pairs, |((mu, cu), (mv, cv))| f(mu, mv).scale(&(*cu * *cv)))
    }

    pub fn bilinear_scalar<F>(u: &Element, v: &Element, f: F) -> Scalar
    where
        F: Fn(&Monomial, &Monomial) -> Scalar + Sync + Send,
    {
        let pairs: Vec<_> = u
            .terms
            .iter()
            .flat_map(|a| v.terms.iter().map(move |b| (a, b)))
            .collect();
        par::sum_scalars(&pairs, |((mu, cu), (mv, cv))| {
            let x = f(mu, mv);
            if x.is_zero() {
                x
            } else {
                x * (*cu * *cv)
            }
        })
    }

    /// The symmetric product `u ∨ v`.
    pub fn vee(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.vee(b), ca * cb);
            }
        }
        out
    }

    /// `u^{∨n}` with `u^{∨0} = 1`.
    pub fn vee_pow(&self, n: u32) -> Element {
        let mut acc = Element::one();
        for _ in 0..n {
            acc = self.vee(&acc);
        }
        acc
    }

    /// ε(u): the coefficient of the unit.
    pub fn counit(&self) -> Scalar {
        self.coefficient(&Monomial::unit())
    }

    /// s(u) = (−1)^n u on `S^n(V)`.
    pub fn antipode(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.grading() % 2 == 1 { -c } else { c.clone() };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    /// The derivation δ_k: δ_k(e_j) = δ_{kj}, extended by Leibniz.
    pub fn derivation(&self, k: usize) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            let mult = m.multiplicity(k);
            if let Some(rest) = m.remove_one(k) {
                out.add_term(rest, c * &Scalar::from(mult as u64));
            }
        }
        out
    }

    /// Δu via the binomial split of each monomial.
    pub fn coproduct(&self) -> TensorElement {
        let mut out = TensorElement::zero();
        for (m, c) in &self.terms {
            for (l, r, w) in m.splits() {
                out.add_term(l, r, c * &Scalar::from(w));
            }
        }
        out
    }

    /// Sweedler terms `(u_(1), u_(2), coefficient)` of Δu.
    pub fn sweedler(&self) -> Vec<(Monomial, Monomial, Scalar)> {
        self.coproduct().into_terms()
    }
}

/// `a^(n) = e_k^{∨n}/n!`.
pub fn divided_power(k: usize, n: u32) -> Element {
    Element::term(Monomial::power(k, n), Scalar::inv_factorial(n))
}

impl From<Monomial> for Element {
    fn from(m: Monomial) -> Self {
        Element::term(m, Scalar::one())
    }
}

impl From<Scalar> for Element {
    fn from(c: Scalar) -> Self {
        Element::scalar(c)
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign_element(rhs);
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self.add_assign_element(&rhs);
        self
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from(-1));
        out
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Scalar::from(-1))
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Mul<&Element> for &Scalar {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        rhs.scale(self)
    }
}

pub(crate) fn write_terms<'a, K: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a K, &'a Scalar)>,
    is_unit: impl Fn(&K) -> bool,
    show: impl Fn(&K, &mut fmt::Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        let negative = c.is_negative_lead();
        let c = if negative { -c } else { c.clone() };
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if is_unit(k) {
            write!(f, "{c}")?;
        } else if c.is_one() {
            show(k, f)?;
        } else {
            write!(f, "{c}*")?;
            show(k, f)?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Canonical text: terms by descending grading, then lexicographically, e.g.
/// `e1 v e2 + 1/2*e3 - 1/4`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter(), |m| m.is_unit(), |m, f| write!(f, "{m}"))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(k: usize) -> Element {
        Element::generator(k)
    }

    #[test]
    fn vee_basis_and_unit() {
        assert_eq!(e(1).vee(&e(2)), Element::from_indices([1, 2]));
        let u = &e(1) + &e(3).scale(&Scalar::ratio(2, 3));
        assert_eq!(Element::one().vee(&u), u);
        assert_eq!(u.vee(&Element::one()), u);
    }

    #[test]
    fn vee_bilinear_expansion() {
        let u = &e(1) + &e(2).scale(&Scalar::from(2));
        let expected = Element::from_terms([
            (Monomial::from_indices([1, 1]), Scalar::one()),
            (Monomial::from_indices([1, 2]), Scalar::from(2)),
        ]);
        assert_eq!(u.vee(&e(1)), expected);
    }

    #[test]
    fn counit_values() {
        assert_eq!(Element::one().counit(), Scalar::one());
        assert_eq!(Element::from_indices([1, 2]).counit(), Scalar::zero());
        let u = Element::scalar(Scalar::from(3)) + e(1).scale(&Scalar::from(2));
        assert_eq!(u.counit(), Scalar::from(3));
    }

    #[test]
    fn antipode_signs() {
        assert_eq!(e(1).antipode(), -e(1));
        let m = Element::from_indices([1, 2]);
        assert_eq!(m.antipode(), m);
    }

    #[test]
    fn derivations() {
        let m = Element::from_indices([1, 2]);
        assert_eq!(m.derivation(1), e(2));
        assert_eq!(m.derivation(2), e(1));
        assert_eq!(Element::from_indices([1, 1]).derivation(1), e(1).scale(&Scalar::from(2)));
        assert!(Element::one().derivation(1).is_zero());
        assert_eq!(e(3).derivation(3), Element::one());
    }

    #[test]
    fn divided_powers() {
        assert_eq!(divided_power(2, 0), Element::one());
        assert_eq!(divided_power(2, 1), e(2));
        let lhs = divided_power(1, 2).vee(&divided_power(1, 3));
        assert_eq!(lhs, divided_power(1, 5).scale(&Scalar::from(10)));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let u = &e(1) - &e(1);
        assert!(u.is_zero());
        assert_eq!(u.to_string(), "0");
    }

    #[test]
    fn display_canonical() {
        let u = Element::from_terms([
            (Monomial::unit(), Scalar::ratio(-1, 4)),
            (Monomial::generator(3), Scalar::ratio(1, 2)),
            (Monomial::from_indices([1, 2]), Scalar::one()),
            (Monomial::generator(1), Scalar::from(-1)),
        ]);
        assert_eq!(u.to_string(), "e1 v e2 - e1 + 1/2*e3 - 1/4");
        assert_eq!((-e(2)).to_string(), "-e2");
        let c = e(1).scale(&Scalar::complex((1, 2), (-3, 4)));
        assert_eq!(c.to_string(), "1/2-3/4i*e1");
    }
}
