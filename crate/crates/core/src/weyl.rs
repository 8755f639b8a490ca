//! Noncommutative polynomials in `q̂, p̂` and the Weyl correspondence.
//!
//! Operators are kept in canonical (standard) order, every `q̂` to the left
//! of every `p̂`, with `[q̂_i, p̂_j] = 2μ·δ_ij`. Since `μ = iħ/2` this is the
//! usual `iħ`. The Weyl map is standard-order substitution composed with the
//! transition operator `exp(−μ Σ_i ∂_{q_i} ∂_{p_i})`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::poly::{binomial, factorial};
use crate::algebra::{Coeff, DiffOp, Monomial, Poly, Space};
use crate::error::{Error, Result};
use crate::spaces;
use crate::star::PhasePoly;

/// Operator space names `Q1..Qn, P1..Pn`.
pub fn operator_space(n: usize, max_degree: u32) -> Arc<Space> {
    Space::with_max_degree(
        (1..=n).map(|k| format!("Q{k}")).chain((1..=n).map(|k| format!("P{k}"))),
        max_degree,
    )
}

/// A canonically ordered operator polynomial. Term `c·Q^a·P^b` stands for
/// `c·q̂^a p̂^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPoly {
    n: usize,
    words: Poly,
}

impl NCPoly {
    pub fn identity(n: usize) -> Self {
        NCPoly::from_words(Poly::one(&operator_space(n, crate::algebra::DEFAULT_MAX_DEGREE)))
    }

    pub fn zero(n: usize) -> Self {
        NCPoly::from_words(Poly::zero(&operator_space(n, crate::algebra::DEFAULT_MAX_DEGREE)))
    }

    /// `q̂_k` (1-based).
    pub fn q(n: usize, k: usize) -> Self {
        NCPoly::from_words(Poly::var(&operator_space(n, crate::algebra::DEFAULT_MAX_DEGREE), k - 1))
    }

    /// `p̂_k` (1-based).
    pub fn p(n: usize, k: usize) -> Self {
        NCPoly::from_words(Poly::var(&operator_space(n, crate::algebra::DEFAULT_MAX_DEGREE), n + k - 1))
    }

    /// `c·q̂^a p̂^b`.
    pub fn word(n: usize, q_exps: &[u32], p_exps: &[u32], c: Coeff) -> Self {
        let exps: Vec<u32> = q_exps.iter().chain(p_exps).copied().collect();
        NCPoly::from_words(Poly::from_terms(&operator_space(n, crate::algebra::DEFAULT_MAX_DEGREE), [(exps, c)]))
    }

    /// Wrap a polynomial on `Q1..Qn, P1..Pn` read as canonical words.
    pub fn new(n: usize, words: Poly) -> Result<Self> {
        let names: Vec<_> = operator_space(n, 0).names().to_vec();
        spaces::expect_names(&words, &names)?;
        Ok(NCPoly { n, words })
    }

    fn from_words(words: Poly) -> Self {
        NCPoly {
            n: words.nvars() / 2,
            words,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &Poly {
        &self.words
    }

    pub fn scale(&self, c: &Coeff) -> NCPoly {
        NCPoly::from_words(self.words.scale(c))
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.words.fmt(f)
    }
}

impl core::ops::Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        NCPoly::from_words(&self.words + &rhs.words)
    }
}

impl core::ops::Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        NCPoly::from_words(&self.words - &rhs.words)
    }
}

/// Operator product, rewritten to canonical order.
///
/// Per index, `p̂^b q̂^c = Σ_k C(b,k) C(c,k) k! (−2μ)^k q̂^{c−k} p̂^{b−k}`;
/// distinct indices commute, so a product of words factors index by index.
pub fn nc_mul(a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    a.words.same_space(&b.words)?;
    let n = a.n;
    let space = a.words.space().clone();
    let minus_two_mu = Coeff::from_int(-2) * Coeff::mu();
    let mut out = Poly::zero(&space);
    for (ma, ca) in a.words.terms() {
        for (mb, cb) in b.words.terms() {
            let (qa, pa) = ma.exponents().split_at(n);
            let (qb, pb) = mb.exponents().split_at(n);
            // Enumerate contraction counts k_i ≤ min(pa_i, qb_i) per index.
            let limits: Vec<u32> = (0..n).map(|i| pa[i].min(qb[i])).collect();
            let mut ks = vec![0u32; n];
            loop {
                let mut c = ca * cb;
                let mut exps = vec![0u32; 2 * n];
                for i in 0..n {
                    let k = ks[i];
                    let weight = binomial(pa[i], k) * binomial(qb[i], k) * factorial(k);
                    c = &c * &(&Coeff::from_int(weight) * &minus_two_mu.pow(k));
                    exps[i] = qa[i] + qb[i] - k;
                    exps[n + i] = pa[i] + pb[i] - k;
                }
                out.add_term(Monomial::from_exponents(exps), c);
                // next multi-index
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    if ks[i] < limits[i] {
                        ks[i] += 1;
                        break;
                    }
                    ks[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }
    Ok(NCPoly::from_words(out))
}

/// `exp(s·μ·Σ_i ∂_{q_i} ∂_{p_i})` on a polynomial over a `2n`-variable space.
fn transition(poly: &Poly, n: usize, sign: i64) -> Result<Poly> {
    let sigma = spaces::sigma_space(n, poly.space().max_degree());
    let gen = (0..n).fold(Poly::zero(&sigma), |acc, k| {
        &acc + &(&Poly::var(&sigma, k) * &Poly::var(&sigma, n + k)).scale(&Coeff::mu())
    });
    let op = DiffOp::with_scale(gen.scale(&Coeff::from_int(sign)), (0..2 * n).collect(), Coeff::one());
    op.apply_exp(poly)
}

fn identity_map(n: usize) -> Vec<usize> {
    (0..2 * n).collect()
}

/// The symmetric-ordering image of a phase-space polynomial.
pub fn weyl_quantize(f: &PhasePoly) -> Result<NCPoly> {
    let n = f.n();
    let standard = transition(f.poly(), n, -1)?;
    let ops = operator_space(n, f.poly().space().max_degree());
    Ok(NCPoly::from_words(standard.reindex(&ops, &identity_map(n))))
}

/// Inverse of [`weyl_quantize`].
pub fn weyl_symbol(a: &NCPoly) -> Result<PhasePoly> {
    let n = a.n;
    let phase = spaces::phase_space(n, a.words.space().max_degree());
    let standard = a.words.reindex(&phase, &identity_map(n));
    PhasePoly::new(n, transition(&standard, n, 1)?)
}

/// The operator assigned to `f` by the ordering kernel `Ω = e^χ`:
/// `weyl_quantize(u_map(f, χ))`. It is a homomorphism for `⋆_B` with
/// `B = (χ, μJ)`.
pub fn ordered_quantize(f: &PhasePoly, chi: &Poly) -> Result<NCPoly> {
    weyl_quantize(&crate::star::u_map(f, chi)?)
}
