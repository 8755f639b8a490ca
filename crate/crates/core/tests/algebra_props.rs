//! Ring and field laws for coefficients and polynomials, plus the calculus
//! identities the star product relies on.

mod common;

use common::*;
use moyal_core::algebra::{GaussRat, UPoly};
use moyal_core::spaces::{sigma_space, slot_space};
use moyal_core::{Coeff, DiffOp, Monomial, Poly};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn gauss(r: &mut ChaCha8Rng) -> GaussRat {
    let re = GaussRat::from_frac(r.gen_range(-4..=4), r.gen_range(1..=4));
    if r.gen_bool(0.3) {
        &re + &(&GaussRat::from_frac(r.gen_range(-3..=3), r.gen_range(1..=3)) * &GaussRat::i())
    } else {
        re
    }
}

fn upoly(r: &mut ChaCha8Rng) -> UPoly {
    UPoly::from_coeffs((0..r.gen_range(1..=3)).map(|_| gauss(r)).collect())
}

/// An element of ℚ(i)(μ), sometimes with a non-monomial denominator.
fn field_element(r: &mut ChaCha8Rng) -> Coeff {
    let num = upoly(r);
    if r.gen_bool(0.4) {
        let den = upoly(r);
        if !den.is_zero() {
            return Coeff::from_fraction(num, den).expect("nonzero denominator");
        }
    }
    Coeff::from_upoly(num)
}

fn poly(r: &mut ChaCha8Rng, space: &std::sync::Arc<moyal_core::Space>, max_degree: u32) -> Poly {
    let nv = space.len();
    let mut p = Poly::zero(space);
    for _ in 0..r.gen_range(0..=4) {
        let e: Vec<u32> = (0..nv).map(|_| r.gen_range(0..=max_degree / nv as u32 + 1)).collect();
        p = &p + &Poly::monomial(space, Monomial::from_exponents(e), small_coeff(r));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn coefficient_field_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (field_element(&mut r), field_element(&mut r), field_element(&mut r));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn coefficients_stay_reduced(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = field_element(&mut r);
        let b = field_element(&mut r);
        let s = &a + &b;
        prop_assert!(s.numer().gcd(s.denom()).is_one());
        prop_assert_eq!(s.denom().leading(), Some(&GaussRat::one()));
    }

    #[test]
    fn polynomial_ring_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = space(2);
        let (a, b, c) = (poly(&mut r, &s, 4), poly(&mut r, &s, 4), poly(&mut r, &s, 4));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(a.pow(2), &a * &a);
    }

    #[test]
    fn partial_derivatives_commute(seed in any::<u64>(), i in 0usize..4, j in 0usize..4) {
        let mut r = rng(seed);
        let a = poly(&mut r, &space(2), 6);
        let ij = a.differentiate(i, 1).unwrap().differentiate(j, 1).unwrap();
        let ji = a.differentiate(j, 1).unwrap().differentiate(i, 1).unwrap();
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>(), i in 0usize..4) {
        let mut r = rng(seed);
        let s = space(2);
        let (a, b) = (poly(&mut r, &s, 4), poly(&mut r, &s, 4));
        let lhs = (&a * &b).differentiate(i, 1).unwrap();
        let rhs = &(&a.differentiate(i, 1).unwrap() * &b) + &(&a * &b.differentiate(i, 1).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    /// `exp(a + b) = exp(a)·exp(b)` up to the truncation degree.
    #[test]
    fn truncated_exp_is_additive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = slot_space(1, 2, 64);
        let a = poly(&mut r, &s, 3).filter_terms(|m| m.degree() > 0);
        let b = poly(&mut r, &s, 3).filter_terms(|m| m.degree() > 0);
        let d = 6;
        let lhs = (&a + &b).truncated_exp(d).unwrap();
        let rhs = (&a.truncated_exp(d).unwrap() * &b.truncated_exp(d).unwrap()).truncate(d);
        prop_assert_eq!(lhs, rhs);
    }

    /// `exp(D1)·exp(D2) = exp(D1 + D2)` for constant-coefficient operators.
    #[test]
    fn operator_exponentials_compose(seed in any::<u64>()) {
        let mut r = rng(seed);
        let chi1 = random_chi(&mut r, 1, 3);
        let chi2 = random_chi(&mut r, 1, 3);
        let f = random_phase_poly(&mut r, 1, 5);
        let op = |c: &Poly| DiffOp::fourier(c.clone(), vec![0, 1]);
        let two_steps = op(&chi2).apply_exp(&op(&chi1).apply_exp(f.poly()).unwrap()).unwrap();
        let one_step = op(&(&chi1 + &chi2)).apply_exp(f.poly()).unwrap();
        prop_assert_eq!(two_steps, one_step);
    }

    #[test]
    fn substitution_is_a_homomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sigma = sigma_space(1, 64);
        let two = slot_space(1, 2, 64);
        let (a, b) = (poly(&mut r, &sigma, 4), poly(&mut r, &sigma, 4));
        let images: Vec<Poly> = (0..2).map(|_| poly(&mut r, &two, 2)).collect();
        let lhs = (&a * &b).substitute(&two, &images);
        let rhs = &a.substitute(&two, &images) * &b.substitute(&two, &images);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn degree_guard_is_enforced() {
    let s = moyal_core::Space::with_max_degree(["x"], 5);
    let x = Poly::var(&s, 0);
    assert!(x.checked_pow(5).is_ok());
    assert!(matches!(
        x.checked_pow(6),
        Err(moyal_core::Error::DegreeBound { degree: 6, limit: 5 })
    ));
}

#[test]
fn coefficient_display() {
    let c = &(&Coeff::from_int(6) * &Coeff::mu_pow(2)) - &Coeff::from_frac(1, 3);
    assert_eq!(c.to_string(), "6*mu^2 - 1/3");
    assert_eq!(Coeff::mu().inv().unwrap().to_string(), "mu^-1");
}
