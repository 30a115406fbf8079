//! Formal power series in one parameter λ, truncated at a fixed order, with
//! S(V)-valued or scalar coefficients; the ∨-exponential, S-matrices, Green
//! functions and the Gaussian-Lagrangian closed forms.

use std::fmt;

use crate::algebra::{Element, Monomial};
use crate::error::Error;
use crate::laplace::circle;
use crate::scalar::Scalar;
use crate::tmaps::TContext;

/// Coefficient ring of a [`FormalSeries`]. For elements the product is ∨.
pub trait Coefficient: Clone + PartialEq + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Scalar) -> Self {
        self * c
    }
}

impl Coefficient for Element {
    fn zero() -> Self {
        Element::zero()
    }
    fn one() -> Self {
        Element::one()
    }
    fn is_zero(&self) -> bool {
        Element::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self.vee(other)
    }
    fn scale(&self, c: &Scalar) -> Self {
        Element::scale(self, c)
    }
}

/// `Σ_{n=0}^{N} c_n λ^n`, exact through order `N`.
#[derive(Clone, PartialEq)]
pub struct FormalSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> FormalSeries<C> {
    /// Pads with zeros or truncates so that the series has exactly `order + 1` coefficients.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        FormalSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> C) -> Self {
        FormalSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn constant(c: C, order: usize) -> Self {
        FormalSeries::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        FormalSeries::constant(C::one(), order)
    }

    /// The series `λ`.
    pub fn lambda(order: usize) -> Self {
        FormalSeries::new(vec![C::zero(), C::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "series orders differ");
        FormalSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|x| x.scale(c))
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "series orders differ");
        let n = self.order();
        FormalSeries::from_fn(n, |k| {
            let mut acc = C::zero();
            for i in 0..=k {
                if self.coeffs[i].is_zero() || other.coeffs[k - i].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[i].mul(&other.coeffs[k - i]));
            }
            acc
        })
    }

    /// `self^k`, truncated.
    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(FormalSeries::one(self.order()), |acc, _| acc.mul(self))
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> FormalSeries<D> {
        FormalSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        FormalSeries::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }
}

impl FormalSeries<Scalar> {
    /// `1/self`; `None` if the constant term vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let c0inv = self.coeffs[0].checked_inv()?;
        let n = self.order();
        let mut out = vec![Scalar::zero(); n + 1];
        out[0] = c0inv.clone();
        for k in 1..=n {
            let mut acc = Scalar::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -(acc * &c0inv);
        }
        Some(FormalSeries { coeffs: out })
    }

    /// `self / denom`; `None` if the denominator's constant term vanishes.
    pub fn div(&self, denom: &Self) -> Option<Self> {
        Some(self.mul(&denom.inverse()?))
    }

    /// `self^{-1/2}` for a series with constant term 1, by Newton iteration
    /// `g ← g (3 − f g²) / 2`, doubling the exact order each step.
    pub fn inv_sqrt(&self) -> Option<Self> {
        if !self.coeffs[0].is_one() {
            return None;
        }
        let n = self.order();
        let mut g = FormalSeries::one(n);
        let mut exact = 1usize;
        let three = FormalSeries::constant(Scalar::from(3), n);
        let half = Scalar::ratio(1, 2);
        while exact < n + 1 {
            exact = (2 * exact).min(n + 1);
            let fg2 = self.mul(&g).mul(&g);
            g = g.mul(&three.sub(&fg2)).scale(&half);
        }
        Some(g)
    }

    /// `exp(self)` for a series with zero constant term, via `n g_n = Σ k f_k g_{n−k}`.
    pub fn exp(&self) -> Option<Self> {
        if !self.coeffs[0].is_zero() {
            return None;
        }
        let n = self.order();
        let mut g = vec![Scalar::zero(); n + 1];
        g[0] = Scalar::one();
        for m in 1..=n {
            let mut acc = Scalar::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += Scalar::from(k as u64) * &self.coeffs[k] * &g[m - k];
                }
            }
            g[m] = acc / Scalar::from(m as u64);
        }
        Some(FormalSeries { coeffs: g })
    }
}

impl FormalSeries<Element> {
    /// Multiplies by a scalar series.
    pub fn scale_series(&self, s: &FormalSeries<Scalar>) -> Self {
        assert_eq!(self.order(), s.order(), "series orders differ");
        FormalSeries::from_fn(self.order(), |k| {
            let mut acc = Element::zero();
            for i in 0..=k {
                acc.add_scaled(&self.coeffs[k - i], &s.coeffs[i]);
            }
            acc
        })
    }

    /// Drops every term of grading above `max` in every coefficient.
    pub fn truncate_grading(&self, max: usize) -> Self {
        self.map(|e| e.truncate(max))
    }

    pub fn counit(&self) -> FormalSeries<Scalar> {
        self.map(Element::counit)
    }
}

impl<C: Coefficient> fmt::Display for FormalSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            write!(f, "[λ^{n}] {c}")?;
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for FormalSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `exp^∨(λu)` through order `N`: the λ^n coefficient is `u^{∨n}/n!`.
pub fn vee_exp(u: &Element, order: usize) -> FormalSeries<Element> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut power = Element::one();
    for n in 0..=order {
        if n > 0 {
            power = u.vee(&power);
        }
        coeffs.push(power.scale(&Scalar::inv_factorial(n as u32)));
    }
    FormalSeries::new(coeffs, order)
}

/// `T(exp^∨(λu))`, or `T̄(exp^∨(λu))` when `renormalised`.
pub fn smatrix(
    u: &Element,
    ctx: &TContext,
    order: usize,
    renormalised: bool,
) -> Result<FormalSeries<Element>, Error> {
    let s = vee_exp(u, order);
    let coeffs = s
        .coeffs()
        .iter()
        .map(|c| if renormalised { ctx.tbar_map(c) } else { Ok(ctx.t_map(c)) })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FormalSeries::new(coeffs, order))
}

/// `G_ij = ε(e_i∘e_j∘T(𝒮)) / ε(T(𝒮))` with `𝒮 = exp^∨(λu)`, as a λ-series.
/// The renormalised variant uses T̄ in place of T.
pub fn green(
    i: usize,
    j: usize,
    u: &Element,
    ctx: &TContext,
    order: usize,
    renormalised: bool,
) -> Result<FormalSeries<Scalar>, Error> {
    let dim = ctx.pairing().dim();
    for index in [i, j] {
        if index == 0 || index > dim {
            return Err(Error::GeneratorOutOfRange { index, dim });
        }
    }
    ctx.pairing().check_generators(u)?;
    let s = smatrix(u, ctx, order, renormalised)?;
    let ab = circle(&Element::generator(i), &Element::generator(j), ctx.pairing());
    let numerator = s.map(|x| circle(&ab, x, ctx.pairing()).counit());
    let denominator = s.counit();
    Ok(numerator
        .div(&denominator)
        .expect("ε(T(𝒮)) has constant term 1"))
}

/// Both sides of `T(exp^∨(λa)) = e^{λ²(a|a)/2} exp^∨(λa)` through order `N`.
pub fn simplest_lagrangian_check(
    a: usize,
    ctx: &TContext,
    order: usize,
) -> (FormalSeries<Element>, FormalSeries<Element>) {
    let s = vee_exp(&Element::generator(a), order);
    let lhs = s.map(|c| ctx.t_map(c));
    let half_aa = ctx.pairing().get(a, a) * Scalar::ratio(1, 2);
    let exponent = FormalSeries::lambda(order).pow(2).scale(&half_aa);
    let rhs = s.scale_series(&exponent.exp().expect("zero constant term"));
    (lhs, rhs)
}

fn determinant(m: &[Vec<FormalSeries<Scalar>>], order: usize) -> FormalSeries<Scalar> {
    let n = m.len();
    if n == 0 {
        return FormalSeries::one(order);
    }
    // Laplace expansion along the first row.
    let mut acc = FormalSeries::constant(Scalar::zero(), order);
    for col in 0..n {
        let minor: Vec<Vec<FormalSeries<Scalar>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != col)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = m[0][col].mul(&determinant(&minor, order));
        acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Both sides of the Gaussian closed form for `u = Σ_i e_i∨e_i` with the
/// pairing scaled by λ:
///
/// * `T_λ(exp^∨(u))`, and
/// * `det(1 − 2λM)^{−1/2} · exp^∨(Σ_ij e_i [(1 − 2λM)^{−1}]_ij e_j)`,
///
/// each through λ-order `order` and keeping terms of grading ≤ `max_grade`.
pub fn gaussian_closed_form_check(
    ctx: &TContext,
    order: usize,
    max_grade: usize,
) -> (FormalSeries<Element>, FormalSeries<Element>) {
    let l = ctx.pairing();
    let d = l.dim();
    let u = Element::from_terms((1..=d).map(|i| (Monomial::power(i, 2), Scalar::one())));

    // Left side: a term with k contractions carries λ^k and loses grading 2k,
    // so inputs up to grading max_grade + 2·order contribute.
    let mut lhs = vec![Element::zero(); order + 1];
    let mut power = Element::one();
    let mut n = 0u32;
    while 2 * n as usize <= max_grade + 2 * order {
        let term = power.scale(&Scalar::inv_factorial(n));
        for (k, part) in ctx.t_map_up_to(&term, order).into_iter().enumerate() {
            lhs[k].add_assign_element(&part.truncate(max_grade));
        }
        power = u.vee(&power);
        n += 1;
    }
    let lhs = FormalSeries::new(lhs, order);

    // Right side.
    let entry = |i: usize, j: usize| -> FormalSeries<Scalar> {
        let delta = if i == j { Scalar::one() } else { Scalar::zero() };
        FormalSeries::new(vec![delta, l.get(i, j) * Scalar::from(-2)], order)
    };
    let one_minus: Vec<Vec<_>> = (1..=d).map(|i| (1..=d).map(|j| entry(i, j)).collect()).collect();
    let prefactor = determinant(&one_minus, order)
        .inv_sqrt()
        .expect("det(1 − 2λM) has constant term 1");

    // (1 − 2λM)^{-1} = Σ_k (2λ)^k M^k, with M^k tracked entrywise.
    let mut quad = vec![Element::zero(); order + 1];
    let mut mpow: Vec<Vec<Scalar>> = (1..=d)
        .map(|i| (1..=d).map(|j| Scalar::from((i == j) as i64)).collect())
        .collect();
    for (k, slot) in quad.iter_mut().enumerate() {
        let two_k = Scalar::from(1u64 << k);
        for i in 1..=d {
            for j in 1..=d {
                let c = &mpow[i - 1][j - 1] * &two_k;
                slot.add_term(Monomial::from_indices([i, j]), c);
            }
        }
        mpow = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).map(|m| &mpow[i][m] * l.get(m + 1, j + 1)).sum())
                    .collect()
            })
            .collect();
    }
    let quad = FormalSeries::new(quad, order);
    let mut exp_quad = FormalSeries::<Element>::constant(Element::zero(), order);
    let mut qpow = FormalSeries::<Element>::one(order);
    for n in 0..=(max_grade / 2) as u32 {
        if n > 0 {
            qpow = qpow.mul(&quad).truncate_grading(max_grade);
        }
        exp_quad = exp_quad.add(&qpow.scale(&Scalar::inv_factorial(n)));
    }
    let rhs = exp_quad.scale_series(&prefactor).truncate_grading(max_grade);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laplace::PairingMatrix;

    fn sym(d: usize) -> PairingMatrix {
        PairingMatrix::from_fn(d, |i, j| Scalar::ratio(1, (i + j) as i64))
    }

    fn s(v: &[i64]) -> FormalSeries<Scalar> {
        FormalSeries::new(v.iter().map(|&x| Scalar::from(x)).collect(), v.len() - 1)
    }

    #[test]
    fn scalar_series_arithmetic() {
        let a = s(&[1, 2, 3, 4]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), FormalSeries::one(3));
        let b = s(&[2, 0, 1, 5]);
        assert_eq!(b.div(&a).unwrap().mul(&a), b);
        assert!(s(&[0, 1]).inverse().is_none());
    }

    #[test]
    fn inv_sqrt_of_one_minus_four_x() {
        // (1−4x)^{-1/2} = Σ C(2n,n) x^n
        let f = s(&[1, -4, 0, 0, 0, 0]);
        assert_eq!(f.inv_sqrt().unwrap(), s(&[1, 2, 6, 20, 70, 252]));
        let g = f.inv_sqrt().unwrap();
        assert_eq!(g.mul(&g).mul(&f), FormalSeries::one(5));
        assert!(s(&[2, 1]).inv_sqrt().is_none());
    }

    #[test]
    fn exp_series() {
        let e = FormalSeries::<Scalar>::lambda(4).exp().unwrap();
        let expected = FormalSeries::from_fn(4, |n| Scalar::inv_factorial(n as u32));
        assert_eq!(e, expected);
        assert!(s(&[1, 1]).exp().is_none());
    }

    #[test]
    fn vee_exp_examples() {
        let e1 = Element::generator(1);
        assert_eq!(vee_exp(&e1, 0), FormalSeries::one(0));
        let two = vee_exp(&e1, 2);
        assert_eq!(two.coeff(1), &e1);
        assert_eq!(two.coeff(2), &Element::from_indices([1, 1]).scale(&Scalar::ratio(1, 2)));
    }

    #[test]
    fn vee_exp_shift_by_scalar() {
        // exp^∨(λ(a + s)) = e^{sλ} exp^∨(λa)
        let a = Element::from_indices([1, 2]) + Element::generator(3);
        let sv = Scalar::ratio(2, 3);
        let shifted = vee_exp(&(a.clone() + Element::scalar(sv.clone())), 5);
        let factor = FormalSeries::<Scalar>::lambda(5).scale(&sv).exp().unwrap();
        assert_eq!(shifted, vee_exp(&a, 5).scale_series(&factor));
    }

    #[test]
    fn smatrix_examples() {
        let ctx = TContext::new(sym(2)).unwrap();
        let e1 = Element::generator(1);
        let sm = smatrix(&e1, &ctx, 2, false).unwrap();
        let expected2 = (Element::from_indices([1, 1]) + Element::scalar(ctx.pairing().get(1, 1).clone()))
            .scale(&Scalar::ratio(1, 2));
        assert_eq!(sm.coeff(0), &Element::one());
        assert_eq!(sm.coeff(1), &e1);
        assert_eq!(sm.coeff(2), &expected2);
        assert_eq!(smatrix(&Element::zero(), &ctx, 3, false).unwrap(), FormalSeries::one(3));
    }

    #[test]
    fn green_low_orders() {
        let ctx = TContext::new(sym(2)).unwrap();
        let u = Element::from_indices([1, 1]);
        let g = green(1, 2, &u, &ctx, 0, false).unwrap();
        assert_eq!(g.coeff(0), ctx.pairing().get(1, 2));
        let g0 = green(1, 2, &Element::zero(), &ctx, 3, false).unwrap();
        assert_eq!(g0, FormalSeries::constant(ctx.pairing().get(1, 2).clone(), 3));
        assert!(green(1, 3, &u, &ctx, 1, false).is_err());
    }

    #[test]
    fn simplest_lagrangian_low_orders() {
        let ctx = TContext::new(sym(2)).unwrap();
        let (lhs, rhs) = simplest_lagrangian_check(1, &ctx, 2);
        let aa = ctx.pairing().get(1, 1).clone();
        let expected = (Element::from_indices([1, 1]) + Element::scalar(aa)).scale(&Scalar::ratio(1, 2));
        assert_eq!(lhs.coeff(2), &expected);
        assert_eq!(rhs.coeff(2), &expected);
        assert_eq!(lhs.coeff(0), &Element::one());
        assert_eq!(rhs.coeff(1), &Element::generator(1));
    }

    #[test]
    fn gaussian_orders_zero_and_one() {
        let m = Scalar::ratio(3, 7);
        let l = PairingMatrix::from_fn(1, |_, _| m.clone());
        let ctx = TContext::new(l).unwrap();
        let (lhs, rhs) = gaussian_closed_form_check(&ctx, 1, 4);
        let u = Element::from_indices([1, 1]);
        let exp0 = Element::one() + u.clone() + u.vee(&u).scale(&Scalar::ratio(1, 2));
        assert_eq!(lhs.coeff(0), &exp0);
        assert_eq!(rhs.coeff(0), &exp0);
        assert_eq!(lhs.coeff(1).counit(), m);
        assert_eq!(rhs.coeff(1).counit(), m);
    }
}
