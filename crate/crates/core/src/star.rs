//! Generalized star products and brackets on polynomial phase-space symbols.
//!
//! A kernel `B = e^b` acts through `e^{iσ·z} ⋆ e^{iσ′·z} = B(σ,σ′) e^{i(σ+σ′)·z}`.
//! On polynomials this means substituting `σ → −i∂` on the left factor and
//! `σ′ → −i∂` on the right factor, which turns `e^b` into a terminating
//! bidifferential series. With `b = μ σ′∧σ` and `σ′∧σ = J_ij σ′^i σ^j` this is
//! the Groenewold expansion, fixed by `q ⋆ p = qp + μ`.
//!
//! The deformation parameter is `μ = iħ/2`, so `[q̂, p̂] = iħ = 2μ`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{Coeff, DiffOp, Matrix, Poly, Space};
use crate::error::{Error, Result};
use crate::spaces::{self, bilinear_vu, coboundary, phase_names, sigma_dimension, slot_space};

/// A polynomial symbol on the phase space of an `n`-dimensional
/// configuration space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasePoly {
    n: usize,
    poly: Poly,
}

impl PhasePoly {
    /// Wrap a polynomial whose space is exactly `q1..qn, p1..pn`.
    pub fn new(n: usize, poly: Poly) -> Result<Self> {
        spaces::expect_names(&poly, &phase_names(n))?;
        Ok(PhasePoly { n, poly })
    }

    pub fn space(n: usize) -> Arc<Space> {
        spaces::phase_space(n, crate::algebra::DEFAULT_MAX_DEGREE)
    }

    pub fn zero(space: &Arc<Space>) -> Self {
        PhasePoly::from_phase(Poly::zero(space))
    }

    pub fn one(space: &Arc<Space>) -> Self {
        PhasePoly::from_phase(Poly::one(space))
    }

    pub fn constant(space: &Arc<Space>, c: Coeff) -> Self {
        PhasePoly::from_phase(Poly::constant(space, c))
    }

    /// `q_k` (1-based).
    pub fn q(space: &Arc<Space>, k: usize) -> Self {
        PhasePoly::from_phase(Poly::var(space, k - 1))
    }

    /// `p_k` (1-based).
    pub fn p(space: &Arc<Space>, k: usize) -> Self {
        let n = space.len() / 2;
        PhasePoly::from_phase(Poly::var(space, n + k - 1))
    }

    /// `c · q^a · p^b` with multi-indices `a`, `b`.
    pub fn monomial(space: &Arc<Space>, q_exps: &[u32], p_exps: &[u32], c: Coeff) -> Self {
        let exps: Vec<u32> = q_exps.iter().chain(p_exps).copied().collect();
        PhasePoly::from_phase(Poly::from_terms(space, [(exps, c)]))
    }

    pub(crate) fn from_phase(poly: Poly) -> Self {
        PhasePoly {
            n: poly.nvars() / 2,
            poly,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &Coeff) -> PhasePoly {
        PhasePoly::from_phase(self.poly.scale(c))
    }

    fn same_dim(&self, other: &PhasePoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        self.poly.same_space(&other.poly)
    }
}

impl core::fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        self.poly.fmt(f)
    }
}

impl core::ops::Add for &PhasePoly {
    type Output = PhasePoly;
    fn add(self, rhs: &PhasePoly) -> PhasePoly {
        PhasePoly::from_phase(&self.poly + &rhs.poly)
    }
}

impl core::ops::Sub for &PhasePoly {
    type Output = PhasePoly;
    fn sub(self, rhs: &PhasePoly) -> PhasePoly {
        PhasePoly::from_phase(&self.poly - &rhs.poly)
    }
}

/// Pointwise (commutative) product.
impl core::ops::Mul for &PhasePoly {
    type Output = PhasePoly;
    fn mul(self, rhs: &PhasePoly) -> PhasePoly {
        PhasePoly::from_phase(&self.poly * &rhs.poly)
    }
}

/// An exp-of-polynomial star kernel
/// `b(σ,σ′) = χ(σ) + χ(σ′) − χ(σ+σ′) + σ′ᵀ·M·σ`, `B = e^b`.
#[derive(Clone, Debug)]
pub struct StarKernel {
    n: usize,
    chi: Poly,
    m: Matrix,
    exponent: Poly,
}

impl StarKernel {
    /// `chi` lives on `u1..u2n` with zero constant term; `m` is a `2n×2n`
    /// antisymmetric matrix.
    pub fn new(chi: Poly, m: Matrix) -> Result<Self> {
        let n = sigma_dimension(&chi)?;
        if m.rows() != 2 * n || m.cols() != 2 * n {
            return Err(Error::MatrixShape {
                expected: 2 * n,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if !m.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        if !chi.constant_term().is_zero() {
            return Err(Error::ConstantTerm);
        }
        let two = slot_space(n, 2, chi.space().max_degree());
        let exponent = &coboundary(&chi)? + &bilinear_vu(&m, &two);
        Ok(StarKernel { n, chi, m, exponent })
    }

    /// The Moyal kernel: `χ = 0`, `M = μ·J`.
    pub fn moyal(n: usize) -> Self {
        StarKernel::with_chi(Poly::zero(&spaces::sigma_space(n, crate::algebra::DEFAULT_MAX_DEGREE)))
    }

    /// `χ = μ·Σ_k η_k ξ_k` with `M = μ·J`. Under [`u_map`] this sends `qp`
    /// to `qp − μ`.
    pub fn standard(n: usize) -> Self {
        StarKernel::with_chi(standard_chi(n))
    }

    /// A kernel sharing the Moyal antisymmetric part `μ·J`.
    pub fn with_chi(chi: Poly) -> Self {
        let n = chi.nvars() / 2;
        StarKernel::new(chi, Matrix::canonical_symplectic(n).scale(&Coeff::mu()))
            .expect("μ·J is antisymmetric")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chi(&self) -> &Poly {
        &self.chi
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    /// `b(σ,σ′)` on the two-slot space `u1..u2n, v1..v2n`.
    pub fn exponent(&self) -> &Poly {
        &self.exponent
    }
}

/// `μ·Σ_k u_k u_{n+k}`.
pub fn standard_chi(n: usize) -> Poly {
    let s = spaces::sigma_space(n, crate::algebra::DEFAULT_MAX_DEGREE);
    (0..n).fold(Poly::zero(&s), |acc, k| {
        &acc + &(&Poly::var(&s, k) * &Poly::var(&s, n + k)).scale(&Coeff::mu())
    })
}

/// Tensor space `z ⊗ z′` holding the two factors in separate slots.
fn tensor(f: &PhasePoly, g: &PhasePoly) -> (Arc<Space>, Poly) {
    let d = 2 * f.n;
    let names = phase_names(f.n)
        .into_iter()
        .chain(phase_names(f.n).into_iter().map(|mut s| {
            s.push('\'');
            s
        }));
    let space = Space::with_max_degree(names, f.poly.space().max_degree());
    let left: Vec<usize> = (0..d).collect();
    let right: Vec<usize> = (d..2 * d).collect();
    let ff = f.poly.reindex(&space, &left);
    let gg = g.poly.reindex(&space, &right);
    let prod = &ff * &gg;
    (space, prod)
}

fn merge(f: &PhasePoly, tensor_poly: &Poly) -> PhasePoly {
    let d = 2 * f.n;
    let map: Vec<usize> = (0..d).chain(0..d).collect();
    PhasePoly::from_phase(tensor_poly.reindex(f.poly.space(), &map))
}

fn check_pair(f: &PhasePoly, g: &PhasePoly, n: usize) -> Result<()> {
    f.same_dim(g)?;
    if f.n != n {
        return Err(Error::DimensionMismatch { expected: n, found: f.n });
    }
    let d = f.poly.degree().unwrap_or(0) + g.poly.degree().unwrap_or(0);
    f.poly.guard(d)
}

/// `f ⋆_B g`.
pub fn star(f: &PhasePoly, g: &PhasePoly, kernel: &StarKernel) -> Result<PhasePoly> {
    check_pair(f, g, kernel.n)?;
    if f.is_zero() || g.is_zero() {
        return Ok(PhasePoly::zero(f.poly.space()));
    }
    let (_, fg) = tensor(f, g);
    let d = 4 * f.n;
    let op = DiffOp::fourier(kernel.exponent.clone(), (0..d).collect());
    Ok(merge(f, &op.apply_exp(&fg)?))
}

/// Apply an arbitrary two-slot kernel polynomial `K(σ,σ′)` once:
/// `Σ K_{αβ} (−i)^{|α|+|β|} ∂^α f ∂^β g`.
pub fn bidifferential(f: &PhasePoly, g: &PhasePoly, kernel: &Poly) -> Result<PhasePoly> {
    let n = spaces::kernel_dimension(kernel)?;
    check_pair(f, g, n)?;
    let (_, fg) = tensor(f, g);
    let op = DiffOp::fourier(kernel.clone(), (0..4 * n).collect());
    Ok(merge(f, &op.apply(&fg)?))
}

/// `(f ⋆ g − g ⋆ f)/(2μ)`.
pub fn bracket(f: &PhasePoly, g: &PhasePoly, kernel: &StarKernel) -> Result<PhasePoly> {
    let fg = star(f, g, kernel)?;
    let gf = star(g, f, kernel)?;
    let half_inv_mu = Coeff::from_frac(1, 2) / Coeff::mu();
    Ok((&fg - &gf).scale(&half_inv_mu))
}

/// `Σ_i ∂_{q_i} f ∂_{p_i} g − ∂_{p_i} f ∂_{q_i} g`.
pub fn poisson(f: &PhasePoly, g: &PhasePoly) -> Result<PhasePoly> {
    f.same_dim(g)?;
    let n = f.n;
    let mut out = Poly::zero(f.poly.space());
    for i in 0..n {
        let fq = f.poly.differentiate(i, 1)?;
        let fp = f.poly.differentiate(n + i, 1)?;
        let gq = g.poly.differentiate(i, 1)?;
        let gp = g.poly.differentiate(n + i, 1)?;
        out = &out + &(&(&fq * &gp) - &(&fp * &gq));
    }
    Ok(PhasePoly::from_phase(out))
}

/// Substitute `μ = 0`; fails on the first coefficient with a pole there.
pub fn classical_limit(f: &PhasePoly) -> Result<PhasePoly> {
    f.poly
        .at_mu_zero()
        .map(PhasePoly::from_phase)
        .map_err(Error::Pole)
}

/// The ordering-change map `U f = exp(χ(−i∂_z)) f`. It intertwines `⋆_B`
/// for `B = (χ, M)` with `⋆` for `(0, M)`; `u_map(·, −χ)` inverts it.
pub fn u_map(f: &PhasePoly, chi: &Poly) -> Result<PhasePoly> {
    let n = sigma_dimension(chi)?;
    if n != f.n {
        return Err(Error::DimensionMismatch { expected: f.n, found: n });
    }
    let op = DiffOp::fourier(chi.clone(), (0..2 * n).collect());
    Ok(PhasePoly::from_phase(op.apply_exp(&f.poly)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn setup() -> (Arc<Space>, PhasePoly, PhasePoly) {
        let s = PhasePoly::space(1);
        let q = PhasePoly::q(&s, 1);
        let p = PhasePoly::p(&s, 1);
        (s, q, p)
    }

    fn mu(s: &Arc<Space>, k: usize) -> PhasePoly {
        PhasePoly::constant(s, Coeff::mu_pow(k))
    }

    #[test]
    fn q_star_p_pins_the_sign() {
        let (s, q, p) = setup();
        let moyal = StarKernel::moyal(1);
        assert_eq!(star(&q, &p, &moyal).unwrap(), &(&q * &p) + &mu(&s, 1));
        assert_eq!(star(&p, &q, &moyal).unwrap(), &(&q * &p) - &mu(&s, 1));
    }

    #[test]
    fn q_squared_star_p() {
        let (_, q, p) = setup();
        let got = star(&(&q * &q), &p, &StarKernel::moyal(1)).unwrap();
        let expect = &(&(&q * &q) * &p) + &q.scale(&Coeff::mu()).scale(&Coeff::from_int(2));
        assert_eq!(got, expect);
    }

    #[test]
    fn unit_laws() {
        let (s, q, p) = setup();
        let f = &(&(&q * &q) * &q) * &p;
        let one = PhasePoly::one(&s);
        for k in [StarKernel::moyal(1), StarKernel::standard(1)] {
            assert_eq!(star(&f, &one, &k).unwrap(), f);
            assert_eq!(star(&one, &f, &k).unwrap(), f);
        }
    }

    #[test]
    fn bracket_fixtures() {
        let (s, q, p) = setup();
        let moyal = StarKernel::moyal(1);
        assert_eq!(bracket(&q, &p, &moyal).unwrap(), PhasePoly::one(&s));
        let q2 = &q * &q;
        let p2 = &p * &p;
        assert_eq!(bracket(&q2, &p2, &moyal).unwrap(), (&q * &p).scale(&Coeff::from_int(4)));
        let q3 = &q2 * &q;
        let p3 = &p2 * &p;
        let expect = &(&q2 * &p2).scale(&Coeff::from_int(9)) + &mu(&s, 2).scale(&Coeff::from_int(6));
        let got = bracket(&q3, &p3, &moyal).unwrap();
        assert_eq!(got, expect);
        assert_eq!(got.to_string(), "9*q1^2*p1^2 + 6*mu^2");
    }

    #[test]
    fn poisson_fixtures() {
        let (s, q, p) = setup();
        assert_eq!(poisson(&q, &p).unwrap(), PhasePoly::one(&s));
        assert_eq!(
            poisson(&(&q * &q), &(&p * &p)).unwrap(),
            (&q * &p).scale(&Coeff::from_int(4))
        );
        assert_eq!(poisson(&(&q * &p), &q).unwrap(), q.scale(&Coeff::from_int(-1)));
    }

    #[test]
    fn classical_limit_fixtures() {
        let (s, q, p) = setup();
        let f = &(&(&q * &q) * &(&p * &p)).scale(&Coeff::from_int(9)) + &mu(&s, 2).scale(&Coeff::from_int(6));
        assert_eq!(classical_limit(&f).unwrap(), (&(&q * &q) * &(&p * &p)).scale(&Coeff::from_int(9)));
        let qp = &q * &p;
        assert_eq!(classical_limit(&qp).unwrap(), qp);
        let bad = q.scale(&Coeff::mu().inv().unwrap());
        assert!(matches!(classical_limit(&bad), Err(Error::Pole(_))));
    }

    #[test]
    fn u_map_fixtures() {
        let (s, q, p) = setup();
        let qp = &q * &p;
        let zero = Poly::zero(&spaces::sigma_space(1, 64));
        assert_eq!(u_map(&qp, &zero).unwrap(), qp);
        let chi = standard_chi(1);
        let mapped = u_map(&qp, &chi).unwrap();
        assert_eq!(mapped, &qp - &mu(&s, 1));
        assert_eq!(u_map(&mapped, &-&chi).unwrap(), qp);
        let bad = Poly::one(chi.space());
        assert!(matches!(u_map(&qp, &bad), Err(Error::ConstantTerm)));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let (_, q, _) = setup();
        let s2 = PhasePoly::space(2);
        let q2 = PhasePoly::q(&s2, 1);
        assert!(star(&q, &q2, &StarKernel::moyal(1)).is_err());
        assert!(matches!(star(&q2, &q2, &StarKernel::moyal(1)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn kernel_validation() {
        let chi = Poly::zero(&spaces::sigma_space(1, 64));
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 1, Coeff::one());
        assert!(matches!(StarKernel::new(chi.clone(), m), Err(Error::NotAntisymmetric)));
        assert!(matches!(StarKernel::new(chi, Matrix::zeros(3, 3)), Err(Error::MatrixShape { .. })));
    }
}
