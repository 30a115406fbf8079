//! The identity suites run by `check`: one entry per algebraic law, each a
//! seeded randomized trial or a single exhaustive sweep.

use std::fmt::Display;

use qfa_core::fock::vacuum_expectation;
use qfa_core::laplace::{circle, circle_distribute, recover_pairing, recover_vee, wick_expand};
use qfa_core::random::{self, all_monomials, Bounds};
use qfa_core::renorm::{Convolution, Counit, Functional};
use qfa_core::series::{gaussian_closed_form_check, simplest_lagrangian_check, smatrix};
use qfa_core::tmaps::TBarFunctional;
use qfa_core::{
    divided_power, Element, FockStructure, FormalSeries, Monomial, MultiTensor, PairingMatrix,
    Renormaliser, Scalar, Scheme, TContext, TensorElement,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Config;
use crate::eval::Session;

pub type Outcome = Result<(), String>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// One seeded trial per requested trial count.
    Random,
    /// A single deterministic sweep.
    Once,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Needs {
    Nothing,
    Symmetric,
    Fock,
}

pub struct Law {
    pub suite: &'static str,
    pub name: &'static str,
    pub mode: Mode,
    pub needs: Needs,
    pub run: fn(&Setup, &mut ChaCha8Rng) -> Outcome,
    /// Extra information printed with the result.
    pub note: Option<fn(&Setup) -> Option<String>>,
}

/// Everything the suites evaluate against.
pub struct Setup {
    pub session: Session,
    /// ∘̄ for the all-zero scheme.
    pub trivial: Renormaliser,
    /// Two further schemes for the convolution-group laws.
    pub extra: [Scheme; 2],
    pub max_grade: usize,
}

impl Setup {
    /// When the configuration carries no scheme, one is drawn from `seed`.
    pub fn new(config: &Config, max_grade: usize, seed: u64) -> Setup {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5c4e_3e00_0000);
        let d = config.dimension;
        let mut config = config.clone();
        if config.scheme.is_none() {
            config.scheme = Some(random::scheme(&mut rng, d, 6));
        }
        let extra = [random::scheme(&mut rng, d, 6), random::scheme(&mut rng, d, 6)];
        let trivial = Renormaliser::new(Scheme::trivial(), config.pairing.clone());
        Setup {
            session: Session::new(config),
            trivial,
            extra,
            max_grade,
        }
    }

    pub fn dim(&self) -> usize {
        self.session.config.dimension
    }

    pub fn pairing(&self) -> &PairingMatrix {
        &self.session.config.pairing
    }

    pub fn renorm(&self) -> &Renormaliser {
        self.session.renorm.as_ref().expect("setup always has a scheme")
    }

    pub fn scheme(&self) -> &Scheme {
        self.renorm().scheme()
    }

    pub fn tctx(&self) -> &TContext {
        self.session.tctx.as_ref().expect("law requires a symmetric pairing")
    }

    pub fn fock(&self) -> &FockStructure {
        self.session.config.fock.as_ref().expect("law requires a Fock structure")
    }

    pub fn satisfies(&self, needs: Needs) -> Result<(), &'static str> {
        match needs {
            Needs::Nothing => Ok(()),
            Needs::Symmetric if self.session.tctx.is_none() => {
                Err("needs a symmetric pairing (T-maps and commutativity)")
            }
            Needs::Fock if self.session.config.fock.is_none() => Err("no Fock structure configured"),
            _ => Ok(()),
        }
    }

    /// A random element of grading at most `min(cap, max_grade)`.
    fn el(&self, rng: &mut ChaCha8Rng, cap: usize) -> Element {
        random::element(rng, Bounds::new(self.dim(), self.max_grade.min(cap)))
    }

    fn gen(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(1..=self.dim())
    }

    fn circ(&self, u: &Element, v: &Element) -> Element {
        circle(u, v, self.pairing())
    }

    fn pair(&self, u: &Element, v: &Element) -> Scalar {
        self.pairing().pairing(u, v)
    }
}

fn same<T: PartialEq + Display>(lhs: &T, rhs: &T, what: impl FnOnce() -> String) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{}: lhs = {lhs}, rhs = {rhs}", what()))
    }
}

fn same_dbg<T: PartialEq + std::fmt::Debug>(lhs: &T, rhs: &T, what: impl FnOnce() -> String) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{}: lhs = {lhs:?}, rhs = {rhs:?}", what()))
    }
}

fn mon(m: &Monomial) -> Element {
    Element::from(m.clone())
}

fn monomials_upto(dim: usize, grade: usize) -> Vec<Monomial> {
    (0..=grade).flat_map(|g| all_monomials(dim, g)).collect()
}

/// Σ f(a_(1)) ⊗ g(b_(1)) over the Sweedler terms of `u` and `v`, weighted, as
/// a sum of scalars.
fn sweedler2(u: &Element, v: &Element, mut f: impl FnMut(&Monomial, &Monomial, &Monomial, &Monomial) -> Scalar) -> Scalar {
    let right = v.sweedler();
    let mut acc = Scalar::zero();
    for (a1, a2, c) in u.sweedler() {
        for (b1, b2, d) in &right {
            let x = f(&a1, &a2, b1, b2);
            if !x.is_zero() {
                acc += x * &c * d;
            }
        }
    }
    acc
}

/// Both sides of a coupling identity
/// `Σ P(u_(1)∨v_(1), w) P(u_(2), v_(2)) = Σ P(u, v_(1)∨w_(1)) P(v_(2), w_(2))`.
fn coupling(u: &Element, v: &Element, w: &Element, p: impl Fn(&Element, &Element) -> Scalar) -> (Scalar, Scalar) {
    let lhs = sweedler2(u, v, |a1, a2, b1, b2| {
        let x = p(&mon(a2), &mon(b2));
        if x.is_zero() {
            return x;
        }
        p(&mon(&a1.vee(b1)), w) * x
    });
    let rhs = sweedler2(v, w, |b1, b2, c1, c2| {
        let x = p(&mon(b2), &mon(c2));
        if x.is_zero() {
            return x;
        }
        p(u, &mon(&b1.vee(c1))) * x
    });
    (lhs, rhs)
}

/// Σ (u_(1)∨v_(1)) ⊗ f(u_(2), v_(2)).
fn vee_tensor(u: &Element, v: &Element, f: impl Fn(&Element, &Element) -> Element) -> TensorElement {
    let right = v.sweedler();
    let mut out = TensorElement::zero();
    for (a1, a2, c) in u.sweedler() {
        for (b1, b2, d) in &right {
            out.add_tensor(&mon(&a1.vee(b1)), &f(&mon(&a2), &mon(b2)), &(&c * d));
        }
    }
    out
}

/// Σ f(u_(1), v_(1)) ⊗ (u_(2)∨v_(2)).
fn tensor_vee(u: &Element, v: &Element, f: impl Fn(&Element, &Element) -> Element) -> TensorElement {
    vee_tensor(u, v, f).swap()
}

fn circle_fold(gens: &[usize], l: &PairingMatrix) -> Element {
    gens.iter()
        .fold(Element::one(), |acc, &k| circle(&acc, &Element::generator(k), l))
}

// ---- algebra -------------------------------------------------------------

fn vee_laws(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v, w) = (s.el(rng, 3), s.el(rng, 3), s.el(rng, 3));
    let ctx = || format!("u = {u}, v = {v}, w = {w}");
    same(&u.vee(&v).vee(&w), &u.vee(&v.vee(&w)), || format!("associativity, {}", ctx()))?;
    same(&u.vee(&v), &v.vee(&u), || format!("commutativity, {}", ctx()))?;
    same(&u.vee(&Element::one()), &u, || format!("unit, {}", ctx()))
}

fn coassoc(u: &Element) -> Outcome {
    let once = MultiTensor::from_element(u).expand_slot(0);
    same_dbg(&once.expand_slot(0), &once.expand_slot(1), || format!("u = {u}"))
}

fn coassoc_monomials(s: &Setup, _: &mut ChaCha8Rng) -> Outcome {
    monomials_upto(s.dim(), 5).iter().try_for_each(|m| coassoc(&mon(m)))
}

fn coassoc_random(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    coassoc(&s.el(rng, 5))
}

fn cocommutative(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let u = s.el(rng, 5);
    let d = u.coproduct();
    same(&d.swap(), &d, || format!("u = {u}"))
}

fn counit_law(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let u = s.el(rng, 5);
    let d = u.coproduct();
    same(&d.counit_left(), &u, || format!("(ε⊗Id)Δu, u = {u}"))?;
    same(&d.counit_right(), &u, || format!("(Id⊗ε)Δu, u = {u}"))
}

fn coproduct_multiplicative(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v) = (s.el(rng, 3), s.el(rng, 3));
    same(&u.vee(&v).coproduct(), &u.coproduct().vee(&v.coproduct()), || {
        format!("u = {u}, v = {v}")
    })
}

fn antipode_law(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let u = s.el(rng, 5);
    let d = u.coproduct();
    let expected = Element::scalar(u.counit());
    let left = d.map_slots(|m| mon(m).antipode(), mon).multiply();
    let right = d.map_slots(mon, |m| mon(m).antipode()).multiply();
    same(&left, &expected, || format!("Σ s(u1)∨u2, u = {u}"))?;
    same(&right, &expected, || format!("Σ u1∨s(u2), u = {u}"))
}

fn derivations_commute(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let u = s.el(rng, 5);
    let (i, j) = (s.gen(rng), s.gen(rng));
    same(&u.derivation(j).derivation(i), &u.derivation(i).derivation(j), || {
        format!("i = {i}, j = {j}, u = {u}")
    })
}

fn divided_powers(s: &Setup, _: &mut ChaCha8Rng) -> Outcome {
    for a in 1..=s.dim() {
        for n in 0..=6u32 {
            let dp = divided_power(a, n);
            let mut expected = TensorElement::zero();
            for k in 0..=n {
                expected.add_tensor(&divided_power(a, k), &divided_power(a, n - k), &Scalar::one());
            }
            same(&dp.coproduct(), &expected, || format!("Δ(e{a}^({n}))"))?;
            let sign = Scalar::from(if n % 2 == 0 { 1 } else { -1 });
            same(&dp.antipode(), &dp.scale(&sign), || format!("s(e{a}^({n}))"))?;
        }
    }
    Ok(())
}

// ---- laplace -------------------------------------------------------------

fn circle_assoc(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v, w) = (s.el(rng, 4), s.el(rng, 4), s.el(rng, 4));
    same(&s.circ(&s.circ(&u, &v), &w), &s.circ(&u, &s.circ(&v, &w)), || {
        format!("u = {u}, v = {v}, w = {w}")
    })
}

fn circle_counit(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v) = (s.el(rng, 4), s.el(rng, 4));
    same(&s.circ(&u, &v).counit(), &s.pair(&u, &v), || format!("u = {u}, v = {v}"))
}

fn delta_circle(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v) = (s.el(rng, 3), s.el(rng, 3));
    let lhs = s.circ(&u, &v).coproduct();
    same(&lhs, &vee_tensor(&u, &v, |a, b| s.circ(a, b)), || {
        format!("Σ (u1∨v1)⊗(u2∘v2), u = {u}, v = {v}")
    })?;
    same(&lhs, &tensor_vee(&u, &v, |a, b| s.circ(a, b)), || {
        format!("Σ (u1∘v1)⊗(u2∨v2), u = {u}, v = {v}")
    })
}

fn pairing_circle_adjoint(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v, w) = (s.el(rng, 3), s.el(rng, 3), s.el(rng, 3));
    same(&s.pair(&u, &s.circ(&v, &w)), &s.pair(&s.circ(&u, &v), &w), || {
        format!("u = {u}, v = {v}, w = {w}")
    })
}

fn laplace_identities(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v, w) = (s.el(rng, 3), s.el(rng, 3), s.el(rng, 3));
    let ctx = || format!("u = {u}, v = {v}, w = {w}");
    let lhs = s.pair(&u.vee(&v), &w);
    let rhs = w.sweedler().into_iter().fold(Scalar::zero(), |acc, (w1, w2, c)| {
        acc + s.pair(&u, &mon(&w1)) * s.pair(&v, &mon(&w2)) * c
    });
    same(&lhs, &rhs, || format!("(u∨v|w), {}", ctx()))?;
    let lhs = s.pair(&u, &v.vee(&w));
    let rhs = u.sweedler().into_iter().fold(Scalar::zero(), |acc, (u1, u2, c)| {
        acc + s.pair(&mon(&u1), &v) * s.pair(&mon(&u2), &w) * c
    });
    same(&lhs, &rhs, || format!("(u|v∨w), {}", ctx()))
}

fn laplace_coupling(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v, w) = (s.el(rng, 3), s.el(rng, 3), s.el(rng, 3));
    let (lhs, rhs) = coupling(&u, &v, &w, |a, b| s.pair(a, b));
    same(&lhs, &rhs, || format!("u = {u}, v = {v}, w = {w}"))
}

fn circle_commutative(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v) = (s.el(rng, 4), s.el(rng, 4));
    same(&s.circ(&u, &v), &s.circ(&v, &u), || format!("u = {u}, v = {v}"))
}

fn commutator_defect(s: &Setup, _: &mut ChaCha8Rng) -> Outcome {
    for i in 1..=s.dim() {
        for j in 1..=s.dim() {
            let (a, b) = (Element::generator(i), Element::generator(j));
            let lhs = s.circ(&a, &b) - s.circ(&b, &a);
            let rhs = Element::scalar(s.pairing().get(i, j) - s.pairing().get(j, i));
            same(&lhs, &rhs, || format!("e{i}∘e{j} - e{j}∘e{i}"))?;
        }
    }
    Ok(())
}

fn commutator_note(s: &Setup) -> Option<String> {
    let mut parts = Vec::new();
    for i in 1..=s.dim() {
        for j in i + 1..=s.dim() {
            let d = s.pairing().get(i, j) - s.pairing().get(j, i);
            if !d.is_zero() {
                parts.push(format!("(e{i}|e{j})-(e{j}|e{i}) = {d}"));
            }
        }
    }
    (!parts.is_empty()).then(|| format!("∘ is not commutative; defect {}", parts.join(", ")))
}

fn antipode_recovery(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v) = (s.el(rng, 3), s.el(rng, 3));
    same(&recover_vee(&u, &v, s.pairing()), &u.vee(&v), || format!("∨, u = {u}, v = {v}"))?;
    same(&recover_pairing(&u, &v, s.pairing()), &Element::scalar(s.pair(&u, &v)), || {
        format!("(u|v), u = {u}, v = {v}")
    })
}

fn distributivity(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v, w) = (s.el(rng, 3), s.el(rng, 3), s.el(rng, 3));
    same(&circle_distribute(&u, &v, &w, s.pairing()), &s.circ(&u, &v.vee(&w)), || {
        format!("u = {u}, v = {v}, w = {w}")
    })
}

fn wick(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(0..=6);
    let gens: Vec<usize> = (0..n).map(|_| s.gen(rng)).collect();
    same(&wick_expand(&gens, s.pairing()), &circle_fold(&gens, s.pairing()), || {
        format!("generators {gens:?}")
    })
}

fn divided_power_pairing(s: &Setup, _: &mut ChaCha8Rng) -> Outcome {
    for a in 1..=s.dim() {
        for b in 1..=s.dim() {
            for n in 0..=5u32 {
                let lhs = s.pair(&divided_power(a, n), &divided_power(b, n));
                let rhs = s.pairing().get(a, b).pow(n) * Scalar::inv_factorial(n);
                same(&lhs, &rhs, || format!("(e{a}^({n})|e{b}^({n}))"))?;
            }
        }
    }
    Ok(())
}

// ---- renorm --------------------------------------------------------------

fn random_monomial(s: &Setup, rng: &mut ChaCha8Rng, max: usize) -> Monomial {
    let g = rng.gen_range(0..=max);
    random::monomial(rng, s.dim(), g)
}

fn convolution_group(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let m = random_monomial(s, rng, 6);
    let (a, b, c) = (s.scheme(), &s.extra[0], &s.extra[1]);
    let ctx = || format!("m = {m}");
    same(
        &Convolution(Convolution(a, b), c).eval_monomial(&m),
        &Convolution(a, Convolution(b, c)).eval_monomial(&m),
        || format!("associativity, {}", ctx()),
    )?;
    same(
        &Convolution(a, b).eval_monomial(&m),
        &Convolution(b, a).eval_monomial(&m),
        || format!("commutativity, {}", ctx()),
    )?;
    same(&Convolution(a, Counit).eval_monomial(&m), &a.eval_monomial(&m), || {
        format!("unit, {}", ctx())
    })
}

fn convolution_inverse(s: &Setup, _: &mut ChaCha8Rng) -> Outcome {
    let inv = s.renorm().inverse();
    for m in monomials_upto(s.dim(), 6) {
        let lhs = Convolution(s.scheme(), inv).eval_monomial(&m);
        same(&lhs, &Counit.eval_monomial(&m), || format!("ζ⋆ζ⁻¹ at {m}"))?;
    }
    Ok(())
}

fn z_symmetric(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v) = (s.el(rng, 4), s.el(rng, 4));
    let r = s.renorm();
    same(&r.z_pairing(&u, &v), &r.z_pairing(&v, &u), || format!("u = {u}, v = {v}"))
}

fn z_coupling(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v, w) = (s.el(rng, 3), s.el(rng, 3), s.el(rng, 3));
    let r = s.renorm();
    let (lhs, rhs) = coupling(&u, &v, &w, |a, b| r.z_pairing(a, b));
    same(&lhs, &rhs, || format!("u = {u}, v = {v}, w = {w}"))
}

fn z_worked_instance(s: &Setup, _: &mut ChaCha8Rng) -> Outcome {
    let r = s.renorm();
    let z = |x: &[usize], y: &[usize]| {
        r.z_pairing(&Element::from_indices(x.iter().copied()), &Element::from_indices(y.iter().copied()))
    };
    let n = s.dim();
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                for d in 1..=n {
                    let lhs = z(&[a, b], &[c, d]);
                    let rhs = z(&[a], &[b, c, d]) + z(&[a], &[c]) * z(&[b], &[d]) + z(&[b], &[c]) * z(&[a], &[d]);
                    same(&lhs, &rhs, || format!("a,b,c,d = e{a},e{b},e{c},e{d}"))?;
                }
            }
        }
    }
    Ok(())
}

fn modified_coupling(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v, w) = (s.el(rng, 3), s.el(rng, 3), s.el(rng, 3));
    let r = s.renorm();
    let (lhs, rhs) = coupling(&u, &v, &w, |a, b| r.modified_pairing(a, b));
    same(&lhs, &rhs, || format!("u = {u}, v = {v}, w = {w}"))
}

fn rcircle_assoc(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v, w) = (s.el(rng, 3), s.el(rng, 3), s.el(rng, 3));
    let r = s.renorm();
    same(&r.circle(&r.circle(&u, &v), &w), &r.circle(&u, &r.circle(&v, &w)), || {
        format!("u = {u}, v = {v}, w = {w}")
    })
}

fn rcircle_commutative(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v) = (s.el(rng, 4), s.el(rng, 4));
    let r = s.renorm();
    same(&r.circle(&u, &v), &r.circle(&v, &u), || format!("u = {u}, v = {v}"))
}

fn delta_rcircle(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v) = (s.el(rng, 3), s.el(rng, 3));
    let r = s.renorm();
    same(&r.circle(&u, &v).coproduct(), &vee_tensor(&u, &v, |a, b| r.circle(a, b)), || {
        format!("u = {u}, v = {v}")
    })
}

fn trivial_scheme(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v) = (s.el(rng, 4), s.el(rng, 4));
    same(&s.trivial.circle(&u, &v), &s.circ(&u, &v), || format!("u = {u}, v = {v}"))
}

// ---- tmaps ---------------------------------------------------------------

fn delta_t(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let u = s.el(rng, 5);
    let t = s.tctx();
    let lhs = t.t_map(&u).coproduct();
    let d = u.coproduct();
    same(&lhs, &d.map_slots(mon, |m| t.t_map(&mon(m))), || format!("Σ u1⊗T(u2), u = {u}"))?;
    same(&lhs, &d.map_slots(|m| t.t_map(&mon(m)), mon), || format!("Σ T(u1)⊗u2, u = {u}"))
}

fn t_multiplicative(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v) = (s.el(rng, 3), s.el(rng, 3));
    let t = s.tctx();
    same(&t.t_map(&u.vee(&v)), &s.circ(&t.t_map(&u), &t.t_map(&v)), || format!("u = {u}, v = {v}"))
}

fn t_scalar_laws(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let u = s.el(rng, 5);
    let t = s.tctx();
    let tu = t.t_map(&u);
    same(&t.t_map_via_scalar(&u), &tu, || format!("Σ t(u1)u2, u = {u}"))?;
    same(&t.t_scalar(&u), &tu.counit(), || format!("t = ε∘T, u = {u}"))
}

fn t_routes(s: &Setup, _: &mut ChaCha8Rng) -> Outcome {
    let t = s.tctx();
    for m in monomials_upto(s.dim(), 6) {
        let u = mon(&m);
        let direct = t.t_map(&u);
        same(&t.t_map_circle_fold(&u), &direct, || format!("circle fold at {m}"))?;
        same(&t.exp_sigma(&u), &direct, || format!("e^Σ at {m}"))?;
    }
    Ok(())
}

fn sigma_commutator(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let u = s.el(rng, 4);
    let k = s.gen(rng);
    let t = s.tctx();
    let a = Element::generator(k);
    let comm = t.sigma(&a.vee(&u)) - a.vee(&t.sigma(&u));
    let via_derivations = t.sigma_commutator(k, &u);
    same(&comm, &via_derivations, || format!("[Σ,e{k}]u, u = {u}"))?;
    same(&s.circ(&a, &u), &(a.vee(&u) + via_derivations), || format!("e{k}∘u, u = {u}"))
}

fn delta_tbar(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let u = s.el(rng, 4);
    let t = s.tctx();
    let tbar = |m: &Monomial| t.tbar_map(&mon(m)).expect("scheme present");
    let lhs = t.tbar_map(&u).map_err(|e| e.to_string())?.coproduct();
    same(&lhs, &u.coproduct().map_slots(mon, tbar), || format!("u = {u}"))
}

fn pinter_monomials(s: &Setup, _: &mut ChaCha8Rng) -> Outcome {
    let t = s.tctx();
    for m in monomials_upto(s.dim(), 6) {
        let u = mon(&m);
        let (lhs, rhs) = (t.tbar_map(&u), t.tbar_pinter(&u));
        same(&lhs.map_err(|e| e.to_string())?, &rhs.map_err(|e| e.to_string())?, || format!("at {m}"))?;
    }
    Ok(())
}

fn pinter_random(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let u = s.el(rng, 6);
    let t = s.tctx();
    same(&t.tbar_map(&u).unwrap(), &t.tbar_pinter(&u).unwrap(), || format!("u = {u}"))
}

fn tbar_scalar_laws(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let u = s.el(rng, 5);
    let t = s.tctx();
    let tbar = t.tbar_scalar(&u).unwrap();
    same(&tbar, &Convolution(s.scheme(), t).eval(&u), || format!("t̄ = ζ⋆t, u = {u}"))?;
    same(&tbar, &TBarFunctional(t).eval(&u), || format!("functional form, u = {u}"))?;
    same(&tbar, &t.tbar_map(&u).unwrap().counit(), || format!("t̄ = ε∘T̄, u = {u}"))?;
    same(&t.tbar_via_scalar(&u).unwrap(), &t.tbar_map(&u).unwrap(), || {
        format!("T̄ = Σ t̄(u1)u2, u = {u}")
    })
}

fn first_identity(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v) = (s.el(rng, 3), s.el(rng, 3));
    let (lhs, rhs) = s.tctx().first_identity_check(&u, &v).map_err(|e| e.to_string())?;
    same(&lhs, &rhs, || format!("u = {u}, v = {v}"))
}

fn t_closed_forms(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let n = 2 * rng.gen_range(0..=4);
    let gens: Vec<usize> = (0..n).map(|_| s.gen(rng)).collect();
    let t = s.tctx();
    let recursive = t.t_monomial(&Monomial::from_indices(gens.iter().copied()));
    let ctx = || format!("generators {gens:?}");
    same(&t.t_closed_form_sequential(&gens), &recursive, || format!("hafnian, {}", ctx()))?;
    same(&t.t_closed_form_parallel(&gens), &recursive, || format!("parallel hafnian, {}", ctx()))?;
    same(&t.t_permutation_form(&gens), &recursive, || format!("permutation form, {}", ctx()))
}

// ---- fock ----------------------------------------------------------------

fn phi_isomorphism(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v) = (s.el(rng, 3), s.el(rng, 3));
    let f = s.fock();
    same(&f.phi(&u.vee(&v)), &f.phi(&u).vee(&f.phi(&v)), || format!("φ(u∨v), u = {u}, v = {v}"))?;
    same(&f.phi(&u).multiply(), &u, || format!("inverse of φ, u = {u}"))
}

fn projectors(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (u, v) = (s.el(rng, 3), s.el(rng, 3));
    let f = s.fock();
    let ctx = || format!("u = {u}, v = {v}");
    same(&f.project_plus(&u.vee(&v)), &f.project_plus(&u).vee(&f.project_plus(&v)), || {
        format!("P, {}", ctx())
    })?;
    same(&f.project_minus(&u.vee(&v)), &f.project_minus(&u).vee(&f.project_minus(&v)), || {
        format!("M, {}", ctx())
    })?;
    let (c, a) = (*f.creation().iter().next().unwrap(), *f.annihilation().iter().next().unwrap());
    let mixed = Element::from_indices([c, a]).vee(&u);
    if !f.project_plus(&mixed).is_zero() || !f.project_minus(&mixed).is_zero() {
        return Err(format!("mixed monomial survives a projector: {mixed}"));
    }
    Ok(())
}

fn vacuum_and_involution(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let u = s.el(rng, 5);
    let f = s.fock();
    same(&vacuum_expectation(&u), &u.counit(), || format!("u = {u}"))?;
    same(&f.involute(&f.involute(&u)), &u, || format!("u** = u, u = {u}"))
}

// ---- series --------------------------------------------------------------

fn scalar_series(rng: &mut ChaCha8Rng, order: usize) -> FormalSeries<Scalar> {
    let coeffs: Vec<Scalar> = (0..=order).map(|_| random::scalar(rng, 0.2)).collect();
    FormalSeries::new(coeffs, order)
}

fn series_ring(_: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let (a, b, c) = (scalar_series(rng, 4), scalar_series(rng, 4), scalar_series(rng, 4));
    same(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)), || format!("A = {a}, B = {b}, C = {c}"))?;
    let q = a.div(&b).ok_or("random series has a vanishing constant term")?;
    same(&q.mul(&b), &a, || format!("(A/B)·B, A = {a}, B = {b}"))
}

fn green_denominator(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let u = s.el(rng, 3);
    for renormalised in [false, true] {
        let sm = smatrix(&u, s.tctx(), 3, renormalised).map_err(|e| e.to_string())?;
        same(sm.counit().coeff(0), &Scalar::one(), || format!("renormalised = {renormalised}, u = {u}"))?;
    }
    Ok(())
}

fn simplest_lagrangian(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let a = s.gen(rng);
    let (lhs, rhs) = simplest_lagrangian_check(a, s.tctx(), 5);
    same(&lhs, &rhs, || format!("a = e{a}"))
}

fn gaussian(s: &Setup, _: &mut ChaCha8Rng) -> Outcome {
    for (d, order, grade) in [(1, 3, 6), (2, 3, 6), (3, 2, 4)] {
        if d > s.dim() {
            break;
        }
        let block = PairingMatrix::from_fn(d, |i, j| s.pairing().get(i, j).clone());
        let ctx = TContext::new(block).map_err(|e| e.to_string())?;
        let (lhs, rhs) = gaussian_closed_form_check(&ctx, order, grade);
        same(&lhs, &rhs, || format!("leading {d}x{d} block, λ-order {order}, grading ≤ {grade}"))?;
    }
    Ok(())
}

// ---- cli -----------------------------------------------------------------

fn round_trip(s: &Setup, rng: &mut ChaCha8Rng) -> Outcome {
    let u = s.el(rng, 5);
    let text = u.to_string();
    let back = match s.session.eval_str(&text) {
        Ok(v) => v.into_element().map_err(|e| e.to_string())?,
        Err(e) => return Err(format!("{text:?} does not parse: {e}")),
    };
    same(&back, &u, || format!("text {text:?}"))?;
    let again = back.to_string();
    same(&again, &text, || "printing twice".to_string())
}

macro_rules! law {
    ($suite:literal, $name:literal, $mode:ident, $needs:ident, $run:expr) => {
        Law {
            suite: $suite,
            name: $name,
            mode: Mode::$mode,
            needs: Needs::$needs,
            run: $run,
            note: None,
        }
    };
}

pub fn registry() -> Vec<Law> {
    vec![
        law!("algebra", "∨ associative, commutative, unital", Random, Nothing, vee_laws),
        law!("algebra", "coassociativity on all monomials of grading ≤ 5", Once, Nothing, coassoc_monomials),
        law!("algebra", "coassociativity", Random, Nothing, coassoc_random),
        law!("algebra", "cocommutativity", Random, Nothing, cocommutative),
        law!("algebra", "counit law", Random, Nothing, counit_law),
        law!("algebra", "Δ(u∨v) = Δu·Δv", Random, Nothing, coproduct_multiplicative),
        law!("algebra", "antipode law", Random, Nothing, antipode_law),
        law!("algebra", "derivations commute", Random, Nothing, derivations_commute),
        law!("algebra", "divided powers: coproduct and antipode", Once, Nothing, divided_powers),
        law!("laplace", "∘ associative", Random, Nothing, circle_assoc),
        law!("laplace", "ε(u∘v) = (u|v)", Random, Nothing, circle_counit),
        law!("laplace", "Δ(u∘v) lemmas", Random, Nothing, delta_circle),
        law!("laplace", "(u|v∘w) = (u∘v|w)", Random, Nothing, pairing_circle_adjoint),
        law!("laplace", "Laplace identities", Random, Nothing, laplace_identities),
        law!("laplace", "Laplace coupling identity", Random, Nothing, laplace_coupling),
        law!("laplace", "∘ commutative", Random, Symmetric, circle_commutative),
        Law {
            note: Some(commutator_note),
            ..law!("laplace", "e_i∘e_j - e_j∘e_i = (e_i|e_j) - (e_j|e_i)", Once, Nothing, commutator_defect)
        },
        law!("laplace", "antipode recovers ∨ and (|)", Random, Nothing, antipode_recovery),
        law!("laplace", "distributivity", Random, Nothing, distributivity),
        law!("laplace", "Wick expansion = circle fold", Random, Nothing, wick),
        law!("laplace", "(a^(n)|b^(n)) = (a|b)^n/n!", Once, Nothing, divided_power_pairing),
        law!("renorm", "convolution group: associative, commutative, unital", Random, Nothing, convolution_group),
        law!("renorm", "ζ⋆ζ⁻¹ = ε on all monomials of grading ≤ 6", Once, Nothing, convolution_inverse),
        law!("renorm", "Z symmetric", Random, Nothing, z_symmetric),
        law!("renorm", "Z coupling identity", Random, Nothing, z_coupling),
        law!("renorm", "Z(a∨b,c∨d) expansion", Once, Nothing, z_worked_instance),
        law!("renorm", "modified coupling identity", Random, Nothing, modified_coupling),
        law!("renorm", "∘̄ associative", Random, Nothing, rcircle_assoc),
        law!("renorm", "∘̄ commutative", Random, Symmetric, rcircle_commutative),
        law!("renorm", "Δ(u∘̄v) lemma", Random, Nothing, delta_rcircle),
        law!("renorm", "trivial scheme: ∘̄ = ∘", Random, Nothing, trivial_scheme),
        law!("tmaps", "ΔT identities", Random, Symmetric, delta_t),
        law!("tmaps", "T(u∨v) = T(u)∘T(v)", Random, Symmetric, t_multiplicative),
        law!("tmaps", "T = Σ t(u1)u2 and t = ε∘T", Random, Symmetric, t_scalar_laws),
        law!("tmaps", "T routes agree on all monomials of grading ≤ 6", Once, Symmetric, t_routes),
        law!("tmaps", "[Σ,a] and a∘u", Random, Symmetric, sigma_commutator),
        law!("tmaps", "ΔT̄ identity", Random, Symmetric, delta_tbar),
        law!("tmaps", "Pinter identity on all monomials of grading ≤ 6", Once, Symmetric, pinter_monomials),
        law!("tmaps", "Pinter identity", Random, Symmetric, pinter_random),
        law!("tmaps", "t̄ = ζ⋆t and T̄ = Σ t̄(u1)u2", Random, Symmetric, tbar_scalar_laws),
        law!("tmaps", "T(u)∘̄T(v) = Σ Z(u1,v1) T(u2)∘T(v2)", Random, Symmetric, first_identity),
        law!("tmaps", "t closed forms agree", Random, Symmetric, t_closed_forms),
        law!("fock", "φ is an algebra isomorphism", Random, Fock, phi_isomorphism),
        law!("fock", "P and M are algebra morphisms", Random, Fock, projectors),
        law!("fock", "vacuum expectation = ε; * involutive", Random, Fock, vacuum_and_involution),
        law!("series", "series ring laws", Random, Nothing, series_ring),
        law!("series", "green denominator has constant term 1", Random, Symmetric, green_denominator),
        law!("series", "simplest Lagrangian through λ^5", Random, Symmetric, simplest_lagrangian),
        law!("series", "Gaussian closed form", Once, Symmetric, gaussian),
        law!("cli", "canonical output round-trips", Random, Nothing, round_trip),
    ]
}
