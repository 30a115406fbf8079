//! The Laplace pairing on S(V) and the circle product it induces.
//!
//! A bilinear form `(e_i|e_j)` on V extends to S(V) by
//! `(a_1∨…∨a_k | b_1∨…∨b_n) = 0` for `k ≠ n` and the permanent of
//! `[(a_i|b_j)]` otherwise. The circle product
//! `u∘v = Σ u_(1)∨v_(1) (u_(2)|v_(2))` is associative for every pairing and
//! commutative exactly when the pairing is symmetric.

mod permanent;

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

pub use permanent::{
    permanent, permanent_naive, permanent_ryser, permanent_ryser_par, PermanentKernel,
    SquareMatrix, RYSER_PARALLEL_MIN,
};

use crate::algebra::{Element, Monomial, MultiTensor};
use crate::error::Error;
use crate::scalar::Scalar;

/// The bilinear form `(e_i|e_j)` on generators, 1-based.
///
/// Pairings of monomials are memoised; the cache is invisible to callers.
pub struct PairingMatrix {
    dim: usize,
    entries: Vec<Scalar>,
    symmetric: bool,
    kernel: PermanentKernel,
    cache: RwLock<HashMap<(Monomial, Monomial), Scalar>>,
}

impl PairingMatrix {
    /// Validates the shape and, if `symmetric` is declared, the symmetry.
    pub fn new(rows: Vec<Vec<Scalar>>, symmetric: bool) -> Result<Self, Error> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::PairingShape {
                dim,
                rows: dim,
                bad_row_len: Some(bad.len()),
            });
        }
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        let p = PairingMatrix::from_entries(dim, entries, symmetric);
        if symmetric {
            for i in 1..=dim {
                for j in i + 1..=dim {
                    if p.get(i, j) != p.get(j, i) {
                        return Err(Error::NotSymmetric { i, j });
                    }
                }
            }
        }
        Ok(p)
    }

    fn from_entries(dim: usize, entries: Vec<Scalar>, symmetric: bool) -> Self {
        PairingMatrix {
            dim,
            entries,
            symmetric,
            kernel: PermanentKernel::default(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// `(e_i|e_j) = f(i, j)` for `1 ≤ i, j ≤ dim`; symmetry is detected, not declared.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let entries: Vec<Scalar> = (1..=dim)
            .flat_map(|i| (1..=dim).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        let mut p = PairingMatrix::from_entries(dim, entries, false);
        p.symmetric = (1..=dim).all(|i| (1..=dim).all(|j| p.get(i, j) == p.get(j, i)));
        p
    }

    /// The same pairing with every entry multiplied by `c`.
    pub fn scaled(&self, c: &Scalar) -> PairingMatrix {
        let mut p = PairingMatrix::from_entries(
            self.dim,
            self.entries.iter().map(|x| x * c).collect(),
            self.symmetric,
        );
        p.kernel = self.kernel;
        p
    }

    pub fn with_kernel(mut self, kernel: PermanentKernel) -> Self {
        self.kernel = kernel;
        self.cache = RwLock::new(HashMap::new());
        self
    }

    pub fn kernel(&self) -> PermanentKernel {
        self.kernel
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The declared (and validated) symmetry flag.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// `(e_i|e_j)`, 1-based. Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(
            (1..=self.dim).contains(&i) && (1..=self.dim).contains(&j),
            "generator index out of range 1..={}",
            self.dim
        );
        &self.entries[(i - 1) * self.dim + (j - 1)]
    }

    pub fn check_generators(&self, u: &Element) -> Result<(), Error> {
        let index = u.max_generator();
        if index > self.dim {
            return Err(Error::GeneratorOutOfRange { index, dim: self.dim });
        }
        Ok(())
    }

    /// `(m|n)` on monomials: zero across gradings, a permanent within one.
    pub fn pair_monomials(&self, m: &Monomial, n: &Monomial) -> Scalar {
        let k = m.grading();
        if k != n.grading() {
            return Scalar::zero();
        }
        match k {
            0 => return Scalar::one(),
            1 => return self.get(m.max_generator(), n.max_generator()).clone(),
            _ => {}
        }
        let key = (m.clone(), n.clone());
        if let Some(v) = self.cache.read().expect("pairing cache poisoned").get(&key) {
            return v.clone();
        }
        let rows = m.index_vec();
        let cols = n.index_vec();
        let sub = SquareMatrix::from_fn(k, |r, c| self.get(rows[r], cols[c]).clone());
        let v = self.kernel.permanent(&sub);
        self.cache
            .write()
            .expect("pairing cache poisoned")
            .insert(key, v.clone());
        v
    }

    /// `(u|v)` extended bilinearly.
    pub fn pairing(&self, u: &Element, v: &Element) -> Scalar {
        Element::bilinear_scalar(u, v, |m, n| self.pair_monomials(m, n))
    }
}

impl Clone for PairingMatrix {
    fn clone(&self) -> Self {
        let mut p = PairingMatrix::from_entries(self.dim, self.entries.clone(), self.symmetric);
        p.kernel = self.kernel;
        p
    }
}

impl fmt::Debug for PairingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PairingMatrix")
            .field("dim", &self.dim)
            .field("entries", &self.entries)
            .field("symmetric", &self.symmetric)
            .field("kernel", &self.kernel)
            .finish()
    }
}

/// `(u|v)`.
pub fn pairing(u: &Element, v: &Element, l: &PairingMatrix) -> Scalar {
    l.pairing(u, v)
}

fn circle_monomials(m: &Monomial, n: &Monomial, l: &PairingMatrix) -> Element {
    if m.is_unit() || n.is_unit() {
        return Element::from(m.vee(n));
    }
    let mut out = Element::zero();
    let right = n.splits();
    for (m1, m2, a) in m.splits() {
        for (n1, n2, b) in &right {
            if m2.grading() != n2.grading() {
                continue;
            }
            let p = l.pair_monomials(&m2, n2);
            if p.is_zero() {
                continue;
            }
            out.add_term(m1.vee(n1), p * Scalar::from(a * b));
        }
    }
    out
}

/// The circle product `u∘v = Σ u_(1)∨v_(1) (u_(2)|v_(2))`.
pub fn circle(u: &Element, v: &Element, l: &PairingMatrix) -> Element {
    Element::bilinear(u, v, |m, n| circle_monomials(m, n, l))
}

/// `u∘b` for a generator `b`, by contracting each factor of `u` with `b`:
/// `u∨b + Σ_j (a_j|b) ∂u/∂a_j`.
pub fn wick_step(u: &Element, b: usize, l: &PairingMatrix) -> Element {
    let mut out = u.vee(&Element::generator(b));
    for (m, c) in u.terms() {
        for &(k, mult) in m.counts() {
            let p = l.get(k, b);
            if p.is_zero() {
                continue;
            }
            let rest = m.remove_one(k).expect("generator present");
            out.add_term(rest, c * p * Scalar::from(mult as u64));
        }
    }
    out
}

/// Wick expansion of `a_1∘a_2∘…∘a_n` sorted by the number of contracted pairs:
/// entry `k` is the sum over all sets of `k` disjoint pairs `i<j` of
/// `∏(a_i|a_j)` times the ∨-product of the uncontracted generators.
pub fn contractions_by_order(generators: &[usize], l: &PairingMatrix) -> Vec<Element> {
    contractions_up_to(generators, l, generators.len() / 2)
}

/// [`contractions_by_order`] restricted to at most `max_pairs` contractions.
pub fn contractions_up_to(generators: &[usize], l: &PairingMatrix, max_pairs: usize) -> Vec<Element> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        gens: &[usize],
        l: &PairingMatrix,
        max_pairs: usize,
        open: &mut Vec<usize>,
        free: &mut Vec<usize>,
        pairs: usize,
        weight: Scalar,
        out: &mut Vec<Element>,
    ) {
        let Some(&first) = open.first() else {
            let m = Monomial::from_indices(free.iter().map(|&p| gens[p]));
            out[pairs].add_term(m, weight);
            return;
        };
        open.remove(0);
        free.push(first);
        rec(gens, l, max_pairs, open, free, pairs, weight.clone(), out);
        free.pop();
        if pairs == max_pairs {
            open.insert(0, first);
            return;
        }
        for slot in 0..open.len() {
            let partner = open[slot];
            let p = l.get(gens[first], gens[partner]);
            if p.is_zero() {
                continue;
            }
            open.remove(slot);
            rec(gens, l, max_pairs, open, free, pairs + 1, &weight * p, out);
            open.insert(slot, partner);
        }
        open.insert(0, first);
    }
    let max_pairs = max_pairs.min(generators.len() / 2);
    let mut out = vec![Element::zero(); max_pairs + 1];
    let mut open: Vec<usize> = (0..generators.len()).collect();
    rec(generators, l, max_pairs, &mut open, &mut Vec::new(), 0, Scalar::one(), &mut out);
    out
}

/// `a_1∘…∘a_n` as the sum over all partial pair contractions.
pub fn wick_expand(generators: &[usize], l: &PairingMatrix) -> Element {
    contractions_by_order(generators, l)
        .into_iter()
        .fold(Element::zero(), |acc, e| acc + e)
}

/// `Σ (s(u_(1))|v_(1)) u_(2)∘v_(2)`, which recovers `u∨v`.
pub fn recover_vee(u: &Element, v: &Element, l: &PairingMatrix) -> Element {
    Element::bilinear(u, v, |m, n| {
        let mut out = Element::zero();
        let right = n.splits();
        for (m1, m2, a) in m.splits() {
            for (n1, n2, b) in &right {
                let p = l.pair_monomials(&m1, n1);
                if p.is_zero() {
                    continue;
                }
                let sign = if m1.grading() % 2 == 1 { -1i64 } else { 1 };
                let c = p * Scalar::from(sign * (a * b) as i64);
                out.add_scaled(&circle_monomials(&m2, n2, l), &c);
            }
        }
        out
    })
}

/// `Σ s(u_(1)∨v_(1)) ∨ (u_(2)∘v_(2))`, which recovers `(u|v)·1`.
pub fn recover_pairing(u: &Element, v: &Element, l: &PairingMatrix) -> Element {
    Element::bilinear(u, v, |m, n| {
        let mut out = Element::zero();
        let right = n.splits();
        for (m1, m2, a) in m.splits() {
            for (n1, n2, b) in &right {
                let front = m1.vee(n1);
                let sign = if front.grading() % 2 == 1 { -1i64 } else { 1 };
                let rest = circle_monomials(&m2, n2, l);
                let front = Element::term(front, Scalar::from(sign * (a * b) as i64));
                out.add_assign_element(&front.vee(&rest));
            }
        }
        out
    })
}

/// `Σ (u_(11)∘v) ∨ (u_(12)∘w) ∨ s(u_(2))`, which equals `u∘(v∨w)`.
pub fn circle_distribute(u: &Element, v: &Element, w: &Element, l: &PairingMatrix) -> Element {
    let triple = MultiTensor::from_element(u).expand_slot(0).expand_slot(0);
    let mut out = Element::zero();
    for (slots, c) in triple.terms() {
        let left = circle(&Element::from(slots[0].clone()), v, l);
        let mid = circle(&Element::from(slots[1].clone()), w, l);
        let tail = Element::from(slots[2].clone()).antipode();
        out.add_scaled(&left.vee(&mid).vee(&tail), c);
    }
    out
}
