//! Randomised algebraic laws. Each case draws its data from a ChaCha stream
//! seeded by proptest, so failures shrink to a single reproducible seed.

use proptest::prelude::*;
use qfa_core::fock::FockStructure;
use qfa_core::laplace::circle;
use qfa_core::random::{self, Bounds};
use qfa_core::renorm::{convolve, Counit, Functional, Inverse};
use qfa_core::{Element, Renormaliser, TContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn elements(r: &mut ChaCha8Rng, dim: usize, grade: usize) -> [Element; 3] {
    let b = Bounds::new(dim, grade);
    [random::element(r, b), random::element(r, b), random::element(r, b)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coproduct_is_multiplicative(seed in any::<u64>()) {
        let mut r = stream(seed);
        let [u, v, _] = elements(&mut r, 3, 3);
        prop_assert_eq!(u.vee(&v).coproduct(), u.coproduct().vee(&v.coproduct()));
    }

    #[test]
    fn antipode_is_an_involution(seed in any::<u64>()) {
        let mut r = stream(seed);
        let [u, v, _] = elements(&mut r, 4, 4);
        prop_assert_eq!(u.antipode().antipode(), u.clone());
        prop_assert_eq!(u.vee(&v).antipode(), u.antipode().vee(&v.antipode()));
    }

    #[test]
    fn circle_is_associative_with_unit(seed in any::<u64>()) {
        let mut r = stream(seed);
        let symmetric = r.gen_bool(0.5);
        let l = random::pairing(&mut r, 3, symmetric);
        let [u, v, w] = elements(&mut r, 3, 2);
        prop_assert_eq!(circle(&circle(&u, &v, &l), &w, &l), circle(&u, &circle(&v, &w, &l), &l));
        prop_assert_eq!(circle(&u, &Element::one(), &l), u.clone());
        prop_assert_eq!(circle(&u, &v, &l).counit(), l.pairing(&u, &v));
    }

    #[test]
    fn scheme_inverse(seed in any::<u64>()) {
        let mut r = stream(seed);
        let z = random::scheme(&mut r, 3, 5);
        let inv = Inverse::new(z.clone());
        let grade = r.gen_range(0..=5);
        let m = random::monomial(&mut r, 3, grade);
        prop_assert_eq!(convolve(&z, &inv).eval_monomial(&m), Counit.eval_monomial(&m));
        prop_assert_eq!(convolve(&inv, &z).eval_monomial(&m), Counit.eval_monomial(&m));
    }

    #[test]
    fn renormalised_circle_is_associative(seed in any::<u64>()) {
        let mut r = stream(seed);
        let symmetric = r.gen_bool(0.5);
        let rn = Renormaliser::new(random::scheme(&mut r, 3, 6), random::pairing(&mut r, 3, symmetric));
        let [u, v, w] = elements(&mut r, 3, 2);
        prop_assert_eq!(rn.circle(&rn.circle(&u, &v), &w), rn.circle(&u, &rn.circle(&v, &w)));
        prop_assert_eq!(rn.z_pairing(&u, &v), rn.z_pairing(&v, &u));
    }

    #[test]
    fn t_map_routes_agree(seed in any::<u64>()) {
        let mut r = stream(seed);
        let ctx = TContext::new(random::pairing(&mut r, 3, true)).unwrap();
        let u = random::element(&mut r, Bounds::new(3, 5));
        let t = ctx.t_map(&u);
        prop_assert_eq!(ctx.t_map_circle_fold(&u), t.clone());
        prop_assert_eq!(ctx.exp_sigma(&u), t.clone());
        prop_assert_eq!(ctx.t_scalar(&u), t.counit());
    }

    #[test]
    fn pinter_identity(seed in any::<u64>()) {
        let mut r = stream(seed);
        let ctx = TContext::with_scheme(random::pairing(&mut r, 3, true), random::scheme(&mut r, 3, 6)).unwrap();
        let u = random::element(&mut r, Bounds::new(3, 4));
        prop_assert_eq!(ctx.tbar_map(&u).unwrap(), ctx.tbar_pinter(&u).unwrap());
    }

    #[test]
    fn phi_is_multiplicative(seed in any::<u64>()) {
        let mut r = stream(seed);
        let fock = FockStructure::new(4, &[(1, 3), (2, 4)]).unwrap();
        let [u, v, _] = elements(&mut r, 4, 3);
        prop_assert_eq!(fock.phi(&u.vee(&v)), fock.phi(&u).vee(&fock.phi(&v)));
        prop_assert_eq!(fock.involute(&fock.involute(&u)), u.clone());
    }
}
