//! Time-ordered products.
//!
//! With a symmetric pairing the circle product is commutative, so
//! `T(a_1∨…∨a_n) = a_1∘…∘a_n` is well defined. T is computed three independent
//! ways (pair-contraction sum, circle fold, `e^Σ` with the contraction
//! Laplacian Σ), and its scalar part `t = ε∘T` is a hafnian. Given a scheme ζ,
//! the renormalised map T̄ is multiplicative from ∨ to ∘̄ and satisfies
//! `T̄(u) = Σ ζ(u_(1)) T(u_(2))`.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::algebra::{Element, Monomial};
use crate::error::Error;
use crate::laplace::{circle, contractions_up_to, wick_expand, PairingMatrix};
use crate::par;
use crate::renorm::{Functional, Renormaliser, Scheme};
use crate::scalar::Scalar;

/// A symmetric pairing, optionally with a renormalisation scheme.
pub struct TContext {
    pairing: PairingMatrix,
    renorm: Option<Renormaliser>,
    t_cache: RwLock<HashMap<Monomial, Scalar>>,
    tbar_cache: RwLock<HashMap<Monomial, Scalar>>,
}

impl TContext {
    /// Fails for an asymmetric pairing.
    pub fn new(pairing: PairingMatrix) -> Result<Self, Error> {
        if !pairing.is_symmetric() {
            return Err(Error::AsymmetricPairing("the T-map"));
        }
        Ok(TContext {
            pairing,
            renorm: None,
            t_cache: RwLock::new(HashMap::new()),
            tbar_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn with_scheme(pairing: PairingMatrix, scheme: Scheme) -> Result<Self, Error> {
        let mut ctx = TContext::new(pairing)?;
        ctx.renorm = Some(Renormaliser::new(scheme, ctx.pairing.clone()));
        Ok(ctx)
    }

    pub fn pairing(&self) -> &PairingMatrix {
        &self.pairing
    }

    pub fn renormaliser(&self) -> Result<&Renormaliser, Error> {
        self.renorm.as_ref().ok_or(Error::MissingScheme)
    }

    pub fn scheme(&self) -> Option<&Scheme> {
        self.renorm.as_ref().map(Renormaliser::scheme)
    }

    /// T(u) by summing over all partial pair contractions of each monomial.
    pub fn t_map(&self, u: &Element) -> Element {
        u.map_linear(|m| wick_expand(&m.index_vec(), &self.pairing))
    }

    /// T(u) split by number of contractions: entry `k` collects the terms with
    /// `k` pairings. Used when the pairing carries a formal scaling parameter.
    pub fn t_map_by_order(&self, u: &Element) -> Vec<Element> {
        self.t_map_up_to(u, usize::MAX)
    }

    /// [`TContext::t_map_by_order`] keeping only entries `0..=max_pairs`.
    pub fn t_map_up_to(&self, u: &Element, max_pairs: usize) -> Vec<Element> {
        let mut out: Vec<Element> = Vec::new();
        for (m, c) in u.terms() {
            for (k, part) in contractions_up_to(&m.index_vec(), &self.pairing, max_pairs)
                .into_iter()
                .enumerate()
            {
                if out.len() <= k {
                    out.resize(k + 1, Element::zero());
                }
                out[k].add_scaled(&part, c);
            }
        }
        out
    }

    /// T(u) as the left fold `(…(a_1∘a_2)∘…)∘a_n` of circle products.
    pub fn t_map_circle_fold(&self, u: &Element) -> Element {
        u.map_linear(|m| {
            m.indices().fold(Element::one(), |acc, k| {
                circle(&acc, &Element::generator(k), &self.pairing)
            })
        })
    }

    /// T(u) = Σ t(u_(1)) u_(2).
    pub fn t_map_via_scalar(&self, u: &Element) -> Element {
        u.map_linear(|m| {
            let mut out = Element::zero();
            for (l, r, w) in m.splits() {
                let t = self.t_monomial(&l);
                if !t.is_zero() {
                    out.add_term(r, t * Scalar::from(w));
                }
            }
            out
        })
    }

    /// Σu = ½ Σ_ij (e_i|e_j) δ_i δ_j u.
    pub fn sigma(&self, u: &Element) -> Element {
        sigma_apply(u, &self.pairing)
    }

    /// `[Σ, a]u = Σ_i (a|e_i) δ_i u` for a generator `a = e_k`.
    pub fn sigma_commutator(&self, k: usize, u: &Element) -> Element {
        let mut out = Element::zero();
        for i in 1..=self.pairing.dim() {
            let p = self.pairing.get(k, i);
            if !p.is_zero() {
                out.add_scaled(&u.derivation(i), p);
            }
        }
        out
    }

    /// `e^Σ u = Σ_k Σ^k u / k!`, finite because Σ lowers grading by two.
    pub fn exp_sigma(&self, u: &Element) -> Element {
        let mut out = u.clone();
        let mut power = u.clone();
        let mut k = 0u32;
        loop {
            power = self.sigma(&power);
            if power.is_zero() {
                return out;
            }
            k += 1;
            out.add_scaled(&power, &Scalar::inv_factorial(k));
        }
    }

    /// The scalar t-map, from `t(u∨v) = Σ t(u_(1)) t(v_(1)) (u_(2)|v_(2))`.
    pub fn t_scalar(&self, u: &Element) -> Scalar {
        u.eval_linear(|m| self.t_monomial(m))
    }

    pub fn t_monomial(&self, m: &Monomial) -> Scalar {
        match m.grading() {
            0 => return Scalar::one(),
            1 => return Scalar::zero(),
            g if g % 2 == 1 => return Scalar::zero(),
            _ => {}
        }
        if let Some(v) = self.t_cache.read().expect("t cache poisoned").get(m) {
            return v.clone();
        }
        let v = self.product_recursion(m, |x| self.t_monomial(x), |a, b| {
            self.pairing.pair_monomials(a, b)
        });
        self.t_cache
            .write()
            .expect("t cache poisoned")
            .insert(m.clone(), v.clone());
        v
    }

    /// Splits `m = a ∨ rest` at its first generator and evaluates
    /// `Σ f(a_(1)) f(rest_(1)) pair(a_(2), rest_(2))`.
    fn product_recursion(
        &self,
        m: &Monomial,
        f: impl Fn(&Monomial) -> Scalar,
        pair: impl Fn(&Monomial, &Monomial) -> Scalar,
    ) -> Scalar {
        let first = m.counts()[0].0;
        let head = Monomial::generator(first);
        let rest = m.remove_one(first).expect("first generator present");
        let rest_splits = rest.splits();
        let mut acc = Scalar::zero();
        for (h1, h2, wh) in head.splits() {
            let x = f(&h1);
            if x.is_zero() {
                continue;
            }
            for (r1, r2, wr) in &rest_splits {
                let p = pair(&h2, r2);
                if p.is_zero() {
                    continue;
                }
                let y = f(r1);
                if y.is_zero() {
                    continue;
                }
                acc += &x * &y * p * Scalar::from(wh * wr);
            }
        }
        acc
    }

    /// t(a_1∨…∨a_{2n}) as a sum over the (2n−1)!! perfect matchings (the
    /// hafnian of the pairing submatrix). Odd lengths give 0.
    pub fn t_closed_form(&self, generators: &[usize]) -> Scalar {
        hafnian_of(generators, &self.pairing, generators.len() >= HAFNIAN_PARALLEL_MIN)
    }

    /// Sequential matching enumeration, for comparison with the parallel path.
    pub fn t_closed_form_sequential(&self, generators: &[usize]) -> Scalar {
        hafnian_of(generators, &self.pairing, false)
    }

    pub fn t_closed_form_parallel(&self, generators: &[usize]) -> Scalar {
        hafnian_of(generators, &self.pairing, true)
    }

    /// `1/(2^n n!) Σ_σ ∏_k (a_σ(2k−1)|a_σ(2k))` over all permutations.
    pub fn t_permutation_form(&self, generators: &[usize]) -> Scalar {
        let len = generators.len();
        if len % 2 == 1 {
            return Scalar::zero();
        }
        let n = len / 2;
        let mut perm: Vec<usize> = generators.to_vec();
        let mut total = Scalar::zero();
        for_each_permutation(&mut perm, &mut |p| {
            let mut prod = Scalar::one();
            for pair in p.chunks(2) {
                prod *= self.pairing.get(pair[0], pair[1]);
                if prod.is_zero() {
                    return;
                }
            }
            total += &prod;
        });
        let norm = Scalar::from(1u64 << n) * Scalar::inv_factorial(n as u32).checked_inv().unwrap();
        &total / &norm
    }

    /// T̄(u): `T̄(a_1∨…∨a_n) = a_1 ∘̄ … ∘̄ a_n`.
    pub fn tbar_map(&self, u: &Element) -> Result<Element, Error> {
        let r = self.renormaliser()?;
        Ok(u.map_linear(|m| {
            m.indices()
                .fold(Element::one(), |acc, k| r.circle(&acc, &Element::generator(k)))
        }))
    }

    /// Σ ζ(u_(1)) T(u_(2)).
    pub fn tbar_pinter(&self, u: &Element) -> Result<Element, Error> {
        let zeta = self.renormaliser()?.scheme();
        Ok(u.map_linear(|m| {
            let mut out = Element::zero();
            for (l, r, w) in m.splits() {
                let z = zeta.eval_monomial(&l);
                if !z.is_zero() {
                    out.add_scaled(&self.t_map(&Element::from(r)), &(z * Scalar::from(w)));
                }
            }
            out
        }))
    }

    /// T̄(u) = Σ t̄(u_(1)) u_(2).
    pub fn tbar_via_scalar(&self, u: &Element) -> Result<Element, Error> {
        self.renormaliser()?;
        Ok(u.map_linear(|m| {
            let mut out = Element::zero();
            for (l, r, w) in m.splits() {
                let t = self.tbar_monomial(&l).expect("scheme checked");
                if !t.is_zero() {
                    out.add_term(r, t * Scalar::from(w));
                }
            }
            out
        }))
    }

    /// t̄ from `t̄(u∨v) = Σ t̄(u_(1)) t̄(v_(1)) (u_(2)|v_(2))‾`.
    pub fn tbar_scalar(&self, u: &Element) -> Result<Scalar, Error> {
        self.renormaliser()?;
        Ok(u.eval_linear(|m| self.tbar_monomial(m).expect("scheme checked")))
    }

    pub fn tbar_monomial(&self, m: &Monomial) -> Result<Scalar, Error> {
        let r = self.renormaliser()?;
        match m.grading() {
            0 => return Ok(Scalar::one()),
            1 => return Ok(Scalar::zero()),
            _ => {}
        }
        if let Some(v) = self.tbar_cache.read().expect("tbar cache poisoned").get(m) {
            return Ok(v.clone());
        }
        let v = self.product_recursion(
            m,
            |x| self.tbar_monomial(x).expect("scheme checked"),
            |a, b| r.modified_monomials(a, b),
        );
        self.tbar_cache
            .write()
            .expect("tbar cache poisoned")
            .insert(m.clone(), v.clone());
        Ok(v)
    }

    /// Both sides of `T(u) ∘̄ T(v) = Σ Z(u_(1), v_(1)) T(u_(2)) ∘ T(v_(2))`.
    pub fn first_identity_check(
        &self,
        u: &Element,
        v: &Element,
    ) -> Result<(Element, Element), Error> {
        let r = self.renormaliser()?;
        let lhs = r.circle(&self.t_map(u), &self.t_map(v));
        let rhs = Element::bilinear(u, v, |m, n| {
            let mut out = Element::zero();
            let right = n.splits();
            for (m1, m2, wa) in m.splits() {
                for (n1, n2, wb) in &right {
                    let z = r.z_monomials(&m1, n1);
                    if z.is_zero() {
                        continue;
                    }
                    let prod = circle(
                        &self.t_map(&Element::from(m2.clone())),
                        &self.t_map(&Element::from(n2.clone())),
                        &self.pairing,
                    );
                    out.add_scaled(&prod, &(z * Scalar::from(wa * wb)));
                }
            }
            out
        });
        Ok((lhs, rhs))
    }
}

/// The scalar t-map as a convolution functional.
impl Functional for TContext {
    fn eval_monomial(&self, m: &Monomial) -> Scalar {
        self.t_monomial(m)
    }
}

/// The scalar t̄-map as a functional. Panics if the context has no scheme.
pub struct TBarFunctional<'a>(pub &'a TContext);

impl Functional for TBarFunctional<'_> {
    fn eval_monomial(&self, m: &Monomial) -> Scalar {
        self.0.tbar_monomial(m).expect("context has a scheme")
    }
}

/// ½ Σ_ij (e_i|e_j) δ_i δ_j u. Defined for any pairing; only its symmetric part
/// contributes.
pub fn sigma_apply(u: &Element, l: &PairingMatrix) -> Element {
    let half = Scalar::ratio(1, 2);
    let mut out = Element::zero();
    for j in 1..=l.dim() {
        let dj = u.derivation(j);
        if dj.is_zero() {
            continue;
        }
        for i in 1..=l.dim() {
            let p = l.get(i, j);
            if !p.is_zero() {
                out.add_scaled(&dj.derivation(i), &(p * &half));
            }
        }
    }
    out
}

/// Length from which [`TContext::t_closed_form`] enumerates matchings in parallel.
pub const HAFNIAN_PARALLEL_MIN: usize = 10;

fn hafnian_of(generators: &[usize], l: &PairingMatrix, parallel: bool) -> Scalar {
    fn rec(gens: &[usize], l: &PairingMatrix, rest: &mut Vec<usize>) -> Scalar {
        if rest.is_empty() {
            return Scalar::one();
        }
        let first = rest.remove(0);
        let mut acc = Scalar::zero();
        for slot in 0..rest.len() {
            let p = l.get(gens[first], gens[rest[slot]]).clone();
            if p.is_zero() {
                continue;
            }
            let partner = rest.remove(slot);
            acc += p * rec(gens, l, rest);
            rest.insert(slot, partner);
        }
        rest.insert(0, first);
        acc
    }
    let len = generators.len();
    if len % 2 == 1 {
        return Scalar::zero();
    }
    if len == 0 {
        return Scalar::one();
    }
    // Top-level branches: position 0 paired with position `j`.
    par::sum_range(len - 1, !parallel, |b| {
        let j = b + 1;
        let p = l.get(generators[0], generators[j]);
        if p.is_zero() {
            return Scalar::zero();
        }
        let mut rest: Vec<usize> = (1..len).filter(|&k| k != j).collect();
        p * rec(generators, l, &mut rest)
    })
}

/// Heap's algorithm.
fn for_each_permutation(items: &mut [usize], f: &mut impl FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    f(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
