//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use moyal_core::kernel::{exponent_tuples, phase_monomials};
use moyal_core::spaces::{phase_space, sigma_space};
use moyal_core::{Coeff, Matrix, Monomial, PhasePoly, Poly, Space};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a/b` with `|a| ≤ 3`, `1 ≤ b ≤ 3`, never zero.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Coeff {
    loop {
        let a: i64 = rng.gen_range(-3..=3);
        if a != 0 {
            return Coeff::from_frac(a, rng.gen_range(1..=3));
        }
    }
}

/// `c0 + c1·μ`, nonzero.
pub fn small_coeff(rng: &mut ChaCha8Rng) -> Coeff {
    match rng.gen_range(0..3) {
        0 => small_rational(rng),
        1 => small_rational(rng) * Coeff::mu(),
        _ => small_rational(rng) + small_rational(rng) * Coeff::mu(),
    }
}

/// A gauge-fixed χ with 1..=3 terms of degree 2..=`max_degree`.
pub fn random_chi(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Poly {
    let s = sigma_space(n, 64);
    let monos: Vec<Vec<u32>> = exponent_tuples(2 * n, max_degree)
        .into_iter()
        .filter(|e| e.iter().sum::<u32>() >= 2)
        .collect();
    let mut chi = Poly::zero(&s);
    for _ in 0..rng.gen_range(1..=3) {
        let e = monos[rng.gen_range(0..monos.len())].clone();
        chi = &chi + &Poly::monomial(&s, Monomial::from_exponents(e), small_coeff(rng));
    }
    chi
}

/// Random antisymmetric `d×d`; about a third of the upper entries are zero.
pub fn random_antisymmetric(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        for j in (i + 1)..d {
            if rng.gen_range(0..3) > 0 {
                let c = small_coeff(rng);
                m.set(j, i, -&c);
                m.set(i, j, c);
            }
        }
    }
    m
}

/// Random antisymmetric `d×d` of full rank.
pub fn random_symplectic(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    loop {
        let m = random_antisymmetric(rng, d);
        if m.rank() == d {
            return m;
        }
    }
}

pub fn monomials(n: usize, max_degree: u32) -> Vec<PhasePoly> {
    phase_monomials(&phase_space(n, 64), max_degree)
}

pub fn space(n: usize) -> Arc<Space> {
    phase_space(n, 64)
}

/// All ordered triples of monomials whose degrees sum to at most `total`.
pub fn triples(n: usize, total: u32) -> Vec<[PhasePoly; 3]> {
    let monos = monomials(n, total);
    let deg = |p: &PhasePoly| p.poly().degree().unwrap_or(0);
    let mut out = Vec::new();
    for f in &monos {
        for g in &monos {
            if deg(f) + deg(g) > total {
                continue;
            }
            for h in &monos {
                if deg(f) + deg(g) + deg(h) <= total {
                    out.push([f.clone(), g.clone(), h.clone()]);
                }
            }
        }
    }
    out
}

/// A random polynomial in phase space: 1..=3 monomials of degree ≤ `max_degree`.
pub fn random_phase_poly(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> PhasePoly {
    let monos = monomials(n, max_degree);
    let mut out = PhasePoly::zero(&space(n));
    for _ in 0..rng.gen_range(1..=3) {
        let m = &monos[rng.gen_range(0..monos.len())];
        out = &out + &m.scale(&small_coeff(rng));
    }
    out
}
