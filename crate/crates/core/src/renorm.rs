//! Renormalisation schemes and the renormalised circle product.
//!
//! A scheme ζ is a linear functional on S(V) with ζ(1) = 1 and ζ(a) = 0 on V.
//! Schemes form a commutative group under the convolution
//! `(ζ⋆ζ')(u) = Σ ζ(u_(1)) ζ'(u_(2))` with unit ε. From ζ and ζ⁻¹ one builds
//! the Z-pairing, the modified Laplace pairing and finally the renormalised
//! circle product `u ∘̄ v = Σ (u_(1)|v_(1))‾ u_(2)∨v_(2)`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::algebra::{Element, Monomial};
use crate::error::Error;
use crate::laplace::PairingMatrix;
use crate::scalar::Scalar;

/// A linear functional on S(V), given on monomials.
pub trait Functional: Send + Sync {
    fn eval_monomial(&self, m: &Monomial) -> Scalar;

    fn eval(&self, u: &Element) -> Scalar {
        u.eval_linear(|m| self.eval_monomial(m))
    }
}

impl<F: Functional + ?Sized> Functional for &F {
    fn eval_monomial(&self, m: &Monomial) -> Scalar {
        (**self).eval_monomial(m)
    }
}

impl<F: Functional + ?Sized> Functional for Arc<F> {
    fn eval_monomial(&self, m: &Monomial) -> Scalar {
        (**self).eval_monomial(m)
    }
}

impl<F: Functional + ?Sized> Functional for Box<F> {
    fn eval_monomial(&self, m: &Monomial) -> Scalar {
        (**self).eval_monomial(m)
    }
}

/// The counit ε, unit of the convolution group.
#[derive(Debug, Clone, Copy, Default)]
pub struct Counit;

impl Functional for Counit {
    fn eval_monomial(&self, m: &Monomial) -> Scalar {
        if m.is_unit() {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }
}

/// A finitely presented scheme: explicit values on monomials of grading ≥ 2,
/// zero elsewhere, with ζ(1) = 1 and ζ(a) = 0 built in.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scheme {
    values: HashMap<Monomial, Scalar>,
}

impl Scheme {
    /// The trivial scheme ζ = ε.
    pub fn trivial() -> Self {
        Scheme::default()
    }

    /// Rejects values on the unit or on generators, which are fixed.
    pub fn new<I: IntoIterator<Item = (Monomial, Scalar)>>(values: I) -> Result<Self, Error> {
        let mut map = HashMap::new();
        for (m, c) in values {
            if m.grading() < 2 {
                return Err(Error::InvalidScheme {
                    key: m.to_string(),
                    reason: "ζ(1) = 1 and ζ(a) = 0 are fixed; values need grading ≥ 2".into(),
                });
            }
            if !c.is_zero() {
                map.insert(m, c);
            }
        }
        Ok(Scheme { values: map })
    }

    pub fn is_trivial(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.values.iter()
    }

    /// ζ(u).
    pub fn eval(&self, u: &Element) -> Scalar {
        Functional::eval(self, u)
    }
}

impl Functional for Scheme {
    fn eval_monomial(&self, m: &Monomial) -> Scalar {
        if m.is_unit() {
            return Scalar::one();
        }
        self.values.get(m).cloned().unwrap_or_default()
    }
}

/// ζ(u) for a finitely presented scheme.
pub fn scheme_eval(z: &Scheme, u: &Element) -> Scalar {
    z.eval(u)
}

/// `f ⋆ g`.
#[derive(Debug, Clone)]
pub struct Convolution<A, B>(pub A, pub B);

impl<A: Functional, B: Functional> Functional for Convolution<A, B> {
    fn eval_monomial(&self, m: &Monomial) -> Scalar {
        let mut acc = Scalar::zero();
        for (l, r, w) in m.splits() {
            let a = self.0.eval_monomial(&l);
            if a.is_zero() {
                continue;
            }
            let b = self.1.eval_monomial(&r);
            if b.is_zero() {
                continue;
            }
            acc += a * b * Scalar::from(w);
        }
        acc
    }
}

pub fn convolve<A: Functional, B: Functional>(a: A, b: B) -> Convolution<A, B> {
    Convolution(a, b)
}

/// The convolution inverse, by the recursion
/// `f⁻¹(u) = −f(u) − Σ' f(u_(1)) f⁻¹(u_(2))` over the reduced coproduct.
/// Values are memoised per monomial.
pub struct Inverse<F> {
    base: F,
    cache: RwLock<HashMap<Monomial, Scalar>>,
}

impl<F: Functional> Inverse<F> {
    pub fn new(base: F) -> Self {
        Inverse {
            base,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn base(&self) -> &F {
        &self.base
    }
}

impl<F: Functional> Functional for Inverse<F> {
    fn eval_monomial(&self, m: &Monomial) -> Scalar {
        if m.is_unit() {
            return Scalar::one();
        }
        if let Some(v) = self.cache.read().expect("inverse cache poisoned").get(m) {
            return v.clone();
        }
        let mut acc = -self.base.eval_monomial(m);
        for (l, r, w) in m.splits() {
            if l.is_unit() || r.is_unit() {
                continue;
            }
            let a = self.base.eval_monomial(&l);
            if a.is_zero() {
                continue;
            }
            acc -= a * self.eval_monomial(&r) * Scalar::from(w);
        }
        self.cache
            .write()
            .expect("inverse cache poisoned")
            .insert(m.clone(), acc.clone());
        acc
    }
}

/// ζ⁻¹ for a scheme.
pub fn convolution_inverse(z: &Scheme) -> Inverse<Scheme> {
    Inverse::new(z.clone())
}

type PairCache = RwLock<HashMap<(Monomial, Monomial), Scalar>>;

/// A scheme together with a pairing: evaluates Z-pairings, modified Laplace
/// pairings and renormalised circle products with shared memoisation.
pub struct Renormaliser {
    pairing: PairingMatrix,
    inverse: Inverse<Scheme>,
    z_cache: PairCache,
    modified_cache: PairCache,
}

fn cached(cache: &PairCache, key: (&Monomial, &Monomial), f: impl FnOnce() -> Scalar) -> Scalar {
    let key = (key.0.clone(), key.1.clone());
    if let Some(v) = cache.read().expect("pair cache poisoned").get(&key) {
        return v.clone();
    }
    let v = f();
    cache.write().expect("pair cache poisoned").insert(key, v.clone());
    v
}

impl Renormaliser {
    pub fn new(scheme: Scheme, pairing: PairingMatrix) -> Self {
        Renormaliser {
            pairing,
            inverse: Inverse::new(scheme),
            z_cache: RwLock::new(HashMap::new()),
            modified_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn scheme(&self) -> &Scheme {
        self.inverse.base()
    }

    pub fn pairing(&self) -> &PairingMatrix {
        &self.pairing
    }

    pub fn inverse(&self) -> &Inverse<Scheme> {
        &self.inverse
    }

    /// Z(m, n) = Σ ζ⁻¹(m_(1)) ζ⁻¹(n_(1)) ζ(m_(2)∨n_(2)).
    pub fn z_monomials(&self, m: &Monomial, n: &Monomial) -> Scalar {
        if m.is_unit() || n.is_unit() {
            let other = if m.is_unit() { n } else { m };
            return Counit.eval_monomial(other);
        }
        // Z is symmetric; cache under a normalised key.
        let (a, b) = if m <= n { (m, n) } else { (n, m) };
        cached(&self.z_cache, (a, b), || {
            let zeta = self.scheme();
            let right = b.splits();
            let mut acc = Scalar::zero();
            for (a1, a2, wa) in a.splits() {
                let x = self.inverse.eval_monomial(&a1);
                if x.is_zero() {
                    continue;
                }
                for (b1, b2, wb) in &right {
                    let y = self.inverse.eval_monomial(b1);
                    if y.is_zero() {
                        continue;
                    }
                    let z = zeta.eval_monomial(&a2.vee(b2));
                    if z.is_zero() {
                        continue;
                    }
                    acc += &x * &y * z * Scalar::from(wa * wb);
                }
            }
            acc
        })
    }

    /// (m|n)‾ = Σ Z(m_(1), n_(1)) (m_(2)|n_(2)).
    pub fn modified_monomials(&self, m: &Monomial, n: &Monomial) -> Scalar {
        cached(&self.modified_cache, (m, n), || {
            let right = n.splits();
            let mut acc = Scalar::zero();
            for (m1, m2, wa) in m.splits() {
                for (n1, n2, wb) in &right {
                    if m2.grading() != n2.grading() {
                        continue;
                    }
                    let p = self.pairing.pair_monomials(&m2, n2);
                    if p.is_zero() {
                        continue;
                    }
                    let z = self.z_monomials(&m1, n1);
                    if z.is_zero() {
                        continue;
                    }
                    acc += p * z * Scalar::from(wa * wb);
                }
            }
            acc
        })
    }

    pub fn circle_monomials(&self, m: &Monomial, n: &Monomial) -> Element {
        if m.is_unit() || n.is_unit() {
            return Element::from(m.vee(n));
        }
        let right = n.splits();
        let mut out = Element::zero();
        for (m1, m2, wa) in m.splits() {
            for (n1, n2, wb) in &right {
                let c = self.modified_monomials(&m1, n1);
                if c.is_zero() {
                    continue;
                }
                out.add_term(m2.vee(n2), c * Scalar::from(wa * wb));
            }
        }
        out
    }

    pub fn z_pairing(&self, u: &Element, v: &Element) -> Scalar {
        Element::bilinear_scalar(u, v, |m, n| self.z_monomials(m, n))
    }

    pub fn modified_pairing(&self, u: &Element, v: &Element) -> Scalar {
        Element::bilinear_scalar(u, v, |m, n| self.modified_monomials(m, n))
    }

    /// `u ∘̄ v`.
    pub fn circle(&self, u: &Element, v: &Element) -> Element {
        Element::bilinear(u, v, |m, n| self.circle_monomials(m, n))
    }
}

/// Z(u, v) for a one-off evaluation.
pub fn z_pairing(u: &Element, v: &Element, z: &Scheme) -> Scalar {
    let dim = u.max_generator().max(v.max_generator());
    Renormaliser::new(z.clone(), PairingMatrix::from_fn(dim, |_, _| Scalar::zero())).z_pairing(u, v)
}

/// (u|v)‾ for a one-off evaluation.
pub fn modified_pairing(u: &Element, v: &Element, z: &Scheme, l: &PairingMatrix) -> Scalar {
    Renormaliser::new(z.clone(), l.clone()).modified_pairing(u, v)
}

/// `u ∘̄ v` for a one-off evaluation.
pub fn circle_renorm(u: &Element, v: &Element, z: &Scheme, l: &PairingMatrix) -> Element {
    Renormaliser::new(z.clone(), l.clone()).circle(u, v)
}
