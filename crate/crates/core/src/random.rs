//! Seeded random generators for identity suites.

use rand::Rng;

use crate::algebra::{Element, Monomial};
use crate::laplace::PairingMatrix;
use crate::renorm::Scheme;
use crate::scalar::Scalar;

/// Bounds for random elements.
#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub dim: usize,
    pub max_grade: usize,
    pub max_terms: usize,
    /// Probability that a coefficient gets an imaginary part.
    pub complex_rate: f64,
}

impl Bounds {
    pub fn new(dim: usize, max_grade: usize) -> Self {
        Bounds {
            dim,
            max_grade,
            max_terms: 3,
            complex_rate: 0.2,
        }
    }

    pub fn with_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn real(mut self) -> Self {
        self.complex_rate = 0.0;
        self
    }
}

/// A small nonzero rational `p/q` with `|p| ≤ 4`, `1 ≤ q ≤ 4`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let mut p = rng.gen_range(-4i64..=4);
    if p == 0 {
        p = 1;
    }
    Scalar::ratio(p, rng.gen_range(1i64..=4))
}

pub fn scalar<R: Rng + ?Sized>(rng: &mut R, complex_rate: f64) -> Scalar {
    let re = rational(rng);
    if rng.gen_bool(complex_rate) {
        re + rational(rng) * Scalar::i()
    } else {
        re
    }
}

pub fn monomial<R: Rng + ?Sized>(rng: &mut R, dim: usize, grade: usize) -> Monomial {
    Monomial::from_indices((0..grade).map(|_| rng.gen_range(1..=dim)))
}

/// A random element with up to `max_terms` terms of grading `0..=max_grade`.
pub fn element<R: Rng + ?Sized>(rng: &mut R, b: Bounds) -> Element {
    let terms = rng.gen_range(1..=b.max_terms.max(1));
    let mut e = Element::zero();
    for _ in 0..terms {
        let grade = rng.gen_range(0..=b.max_grade);
        e.add_term(monomial(rng, b.dim, grade), scalar(rng, b.complex_rate));
    }
    e
}

/// A random homogeneous element: every term has grading exactly `grade`.
pub fn homogeneous<R: Rng + ?Sized>(rng: &mut R, b: Bounds, grade: usize) -> Element {
    let terms = rng.gen_range(1..=b.max_terms.max(1));
    let mut e = Element::zero();
    for _ in 0..terms {
        e.add_term(monomial(rng, b.dim, grade), scalar(rng, b.complex_rate));
    }
    e
}

/// A random pairing, symmetric when asked. Entries are small rationals,
/// occasionally zero.
#[allow(clippy::needless_range_loop)]
pub fn pairing<R: Rng + ?Sized>(rng: &mut R, dim: usize, symmetric: bool) -> PairingMatrix {
    let mut rows = vec![vec![Scalar::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if symmetric && j < i {
                rows[i][j] = rows[j][i].clone();
            } else if rng.gen_bool(0.9) {
                rows[i][j] = rational(rng);
            }
        }
    }
    PairingMatrix::new(rows, symmetric).expect("generated pairing is well formed")
}

/// A random scheme with values on every monomial of grading `2..=max_grade`.
pub fn scheme<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_grade: usize) -> Scheme {
    let mut values = Vec::new();
    for grade in 2..=max_grade {
        for m in all_monomials(dim, grade) {
            if rng.gen_bool(0.85) {
                values.push((m, rational(rng)));
            }
        }
    }
    Scheme::new(values).expect("generated scheme is well formed")
}

/// Every monomial of the given grading over generators `1..=dim`.
pub fn all_monomials(dim: usize, grade: usize) -> Vec<Monomial> {
    fn rec(dim: usize, from: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_indices(cur.iter().copied()));
            return;
        }
        for k in from..=dim {
            cur.push(k);
            rec(dim, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        if grade == 0 {
            out.push(Monomial::unit());
        }
        return out;
    }
    rec(dim, 1, grade, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn monomial_enumeration_counts() {
        // C(d+n-1, n)
        assert_eq!(all_monomials(4, 0).len(), 1);
        assert_eq!(all_monomials(4, 2).len(), 10);
        assert_eq!(all_monomials(3, 4).len(), 15);
    }

    #[test]
    fn elements_respect_bounds() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let e = element(&mut rng, Bounds::new(3, 4));
            assert!(e.grading().unwrap_or(0) <= 4);
            assert!(e.max_generator() <= 3);
        }
        let p = pairing(&mut rng, 3, true);
        assert!(p.is_symmetric());
    }
}
