//! Kernels checked against straightforward reference computations.

use qfa_core::laplace::{circle, permanent_naive, permanent_ryser, permanent_ryser_par, wick_expand};
use qfa_core::random;
use qfa_core::{Element, Monomial, PairingMatrix, Scalar, SquareMatrix, TContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn reference_permanent(m: &SquareMatrix) -> Scalar {
    let n = m.size();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Scalar::zero();
    // Heap's algorithm.
    let mut c = vec![0usize; n];
    let prod = |p: &[usize]| (0..n).fold(Scalar::one(), |acc, i| &acc * m.get(i, p[i]));
    total += prod(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            total += prod(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

#[test]
fn permanents_agree_with_heap_enumeration() {
    let mut r = ChaCha8Rng::seed_from_u64(1);
    for n in 0..=7 {
        for _ in 0..10 {
            let data = (0..n * n).map(|_| random::scalar(&mut r, 0.3)).collect();
            let m = SquareMatrix::new(n, data).unwrap();
            let want = reference_permanent(&m);
            assert_eq!(permanent_ryser(&m), want, "n = {n}");
            assert_eq!(permanent_ryser_par(&m), want, "n = {n}");
            assert_eq!(permanent_naive(&m), want, "n = {n}");
        }
    }
}

#[test]
fn permanent_of_all_ones_is_factorial() {
    for n in 0..=8u32 {
        let m = SquareMatrix::from_fn(n as usize, |_, _| Scalar::one());
        let fact: u64 = (1..=n as u64).product();
        assert_eq!(permanent_ryser(&m), Scalar::from(fact));
    }
}

#[test]
fn hafnian_of_all_ones_counts_matchings() {
    let ctx = TContext::new(PairingMatrix::from_fn(1, |_, _| Scalar::one())).unwrap();
    for n in 0..=5usize {
        let gs = vec![1; 2 * n];
        let count: u64 = (1..2 * n as u64).step_by(2).product();
        assert_eq!(ctx.t_closed_form(&gs), Scalar::from(count));
        assert_eq!(ctx.t_monomial(&Monomial::power(1, 2 * n as u32)), Scalar::from(count));
    }
}

#[test]
fn wick_matches_circle_fold_on_random_lists() {
    let mut r = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let l = random::pairing(&mut r, 3, false);
        let len = r.gen_range(0..=6);
        let gs: Vec<usize> = (0..len).map(|_| r.gen_range(1..=3)).collect();
        let fold = gs
            .iter()
            .fold(Element::one(), |acc, &g| circle(&acc, &Element::generator(g), &l));
        assert_eq!(wick_expand(&gs, &l), fold, "{gs:?}");
    }
}

#[test]
fn worked_examples_with_distinct_entries() {
    let entries = [(1, 2, 2), (1, 3, 3), (1, 4, 5), (2, 3, 7), (2, 4, 11), (3, 4, 13)];
    let l = PairingMatrix::from_fn(4, |i, j| {
        entries
            .iter()
            .find(|&&(a, b, _)| (a, b) == (i.min(j), i.max(j)))
            .map(|&(_, _, v)| Scalar::from(v as i64))
            .unwrap_or_default()
    });
    let e = Element::generator;
    assert_eq!(circle(&e(1), &e(2), &l).to_string(), "e1 v e2 + 2");
    assert_eq!(
        circle(&e(1).vee(&e(2)), &e(3).vee(&e(4)), &l).to_string(),
        "e1 v e2 v e3 v e4 + 11*e1 v e3 + 7*e1 v e4 + 5*e2 v e3 + 3*e2 v e4 + 68"
    );
    let ctx = TContext::new(l).unwrap();
    assert_eq!(ctx.t_scalar(&Element::from_indices([1, 2, 3, 4])), Scalar::from(2 * 13 + 3 * 11 + 5 * 7));
}
