//! Decision and factorization procedures for star-product kernel exponents.
//!
//! An exponent `b(σ,σ′)` defines an associative product iff it is a 2-cocycle
//! of the additive group:
//!
//! ```text
//! b(σ′,σ″) − b(σ+σ′,σ″) + b(σ,σ′+σ″) − b(σ,σ′) = 0
//! ```
//!
//! Every such polynomial splits into a coboundary `χ(σ)+χ(σ′)−χ(σ+σ′)` plus a
//! bilinear antisymmetric form `σ′ᵀ·M·σ`. [`factorize`] recovers both and a
//! Darboux basis for `M`.

use alloc::vec::Vec;

use crate::algebra::{darboux, Coeff, Darboux, Matrix, Monomial, Poly, Term};
use crate::error::{Error, Result, Stage};
use crate::spaces::{self, bilinear_vu, coboundary, kernel_at, kernel_dimension, slot_space, swap_slots};
use crate::star::{star, PhasePoly, StarKernel};

/// `b = log B` on the two-slot space `u1..u2n, v1..v2n`, with `b(0,0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawKernelExponent {
    n: usize,
    b: Poly,
}

impl RawKernelExponent {
    pub fn new(b: Poly) -> Result<Self> {
        let n = kernel_dimension(&b)?;
        let c = b.constant_term();
        if !c.is_zero() {
            return Err(Error::NonzeroOffset(alloc::format!("{c}")));
        }
        Ok(RawKernelExponent { n, b })
    }

    pub fn from_star_kernel(k: &StarKernel) -> Self {
        RawKernelExponent {
            n: k.n(),
            b: k.exponent().clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &Poly {
        &self.b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `b(0,σ)` or `b(σ,0)` is nonzero.
    Normalization,
    /// The cocycle identity has a nonzero defect.
    Cocycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleViolation {
    pub kind: ViolationKind,
    pub witness: Term,
    /// The full defect polynomial (three-slot for the cocycle identity,
    /// two-slot for normalization).
    pub defect: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleOutcome {
    Pass,
    Violation(CocycleViolation),
}

impl CocycleOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CocycleOutcome::Pass)
    }
}

/// The cocycle defect on the three-slot space `u, v, w`.
pub fn cocycle_defect(b: &RawKernelExponent) -> Poly {
    let three = slot_space(b.n, 3, b.b.space().max_degree());
    let t1 = kernel_at(&b.b, &three, &[1], &[2]);
    let t2 = kernel_at(&b.b, &three, &[0, 1], &[2]);
    let t3 = kernel_at(&b.b, &three, &[0], &[1, 2]);
    let t4 = kernel_at(&b.b, &three, &[0], &[1]);
    &(&(&t1 - &t2) + &t3) - &t4
}

/// Check normalization and the cocycle identity exactly.
pub fn cocycle_check(b: &RawKernelExponent) -> CocycleOutcome {
    let d = 2 * b.n;
    let boundary = b.b.filter_terms(|m| m.degree_in(0..d) == 0 || m.degree_in(d..2 * d) == 0);
    if let Some(witness) = boundary.lowest_term() {
        return CocycleOutcome::Violation(CocycleViolation {
            kind: ViolationKind::Normalization,
            witness,
            defect: boundary,
        });
    }
    let defect = cocycle_defect(b);
    match defect.lowest_term() {
        None => CocycleOutcome::Pass,
        Some(witness) => CocycleOutcome::Violation(CocycleViolation {
            kind: ViolationKind::Cocycle,
            witness,
            defect,
        }),
    }
}

/// Symmetric/antisymmetric split of an exponent, with the antisymmetric
/// part read as a matrix and put in Darboux form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntisymmetricForm {
    pub symmetric: Poly,
    pub antisymmetric: Poly,
    /// `b_a(σ,σ′) = σ′ᵀ·M·σ`.
    pub matrix: Matrix,
    pub darboux: Darboux,
}

impl AntisymmetricForm {
    pub fn rank(&self) -> usize {
        self.darboux.rank()
    }
}

pub fn extract_antisymmetric_form(b: &RawKernelExponent) -> Result<AntisymmetricForm> {
    let d = 2 * b.n;
    let swapped = swap_slots(&b.b);
    let half = Coeff::from_frac(1, 2);
    let symmetric = (&b.b + &swapped).scale(&half);
    let antisymmetric = (&b.b - &swapped).scale(&half);
    let offending = antisymmetric.filter_terms(|m| m.degree_in(0..d) != 1 || m.degree_in(d..2 * d) != 1);
    if let Some(w) = offending.lowest_term() {
        return Err(Error::NotBilinear(w));
    }
    let mut matrix = Matrix::zeros(d, d);
    for (m, c) in antisymmetric.terms() {
        let e = m.exponents();
        let j = (0..d).find(|&k| e[k] == 1).expect("bidegree (1,1)");
        let i = (d..2 * d).find(|&k| e[k] == 1).expect("bidegree (1,1)") - d;
        matrix.set(i, j, c.clone());
    }
    let darboux = darboux(&matrix);
    Ok(AntisymmetricForm {
        symmetric,
        antisymmetric,
        matrix,
        darboux,
    })
}

/// Solve `b_s(σ,σ′) = χ(σ) + χ(σ′) − χ(σ+σ′)` for the gauge-fixed `χ`
/// (no constant or linear part). Degree by degree,
/// `χ_d(σ) = b_s(σ,σ)|_d / (2 − 2^d)` for `d ≥ 2`.
pub fn chi_extract(b_s: &Poly) -> Result<Poly> {
    let n = kernel_dimension(b_s)?;
    let asym = b_s - &swap_slots(b_s);
    if let Some(w) = asym.lowest_term() {
        return Err(Error::NotSymmetric(w));
    }
    let d = 2 * n;
    let sigma = spaces::sigma_space(n, b_s.space().max_degree());
    let map: Vec<usize> = (0..d).chain(0..d).collect();
    let diagonal = b_s.reindex(&sigma, &map);
    let mut chi = Poly::zero(&sigma);
    for (m, c) in diagonal.terms() {
        let deg = m.degree();
        if deg < 2 {
            continue;
        }
        let denom = Coeff::from_int(2 - (1i64 << deg));
        chi = &chi + &Poly::monomial(&sigma, m.clone(), c / &denom);
    }
    let residual = &coboundary(&chi)? - b_s;
    if let Some(w) = residual.lowest_term() {
        return Err(Error::NotCoboundary(w));
    }
    Ok(chi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub n: usize,
    /// Gauge-fixed: no constant and no linear part.
    pub chi: Poly,
    /// `b_a(σ,σ′) = σ′ᵀ·M·σ`.
    pub matrix: Matrix,
    pub rank: usize,
    /// Columns `e_1..e_r, f_1..f_r`, then the kernel vectors.
    pub darboux_basis: Matrix,
    pub kernel_basis: Vec<Vec<Coeff>>,
    pub pairings: Vec<Coeff>,
    /// True iff all pairing values agree, i.e. the form is `λ·J` in the
    /// Darboux basis. No rescaling is applied.
    pub uniform_pairing: bool,
}

impl Factorization {
    /// `χ(σ)+χ(σ′)−χ(σ+σ′) + σ′ᵀ·M·σ`.
    pub fn rebuild(&self) -> Poly {
        let two = slot_space(self.n, 2, self.chi.space().max_degree());
        &coboundary(&self.chi).expect("σ-space χ") + &bilinear_vu(&self.matrix, &two)
    }

    /// Trivial center.
    pub fn is_nondegenerate(&self) -> bool {
        self.kernel_basis.is_empty()
    }

    pub fn star_kernel(&self) -> StarKernel {
        StarKernel::new(self.chi.clone(), self.matrix.clone()).expect("validated factorization")
    }
}

/// Cocycle check, antisymmetric form, then χ; every failure carries the
/// stage it came from.
pub fn factorize(b: &RawKernelExponent) -> Result<Factorization> {
    if let CocycleOutcome::Violation(v) = cocycle_check(b) {
        let e = match v.kind {
            ViolationKind::Normalization => Error::Unnormalized(v.witness),
            ViolationKind::Cocycle => Error::CocycleViolation(v.witness),
        };
        return Err(e.at(Stage::CocycleCheck));
    }
    let form = extract_antisymmetric_form(b).map_err(|e| e.at(Stage::AntisymmetricForm))?;
    let chi = chi_extract(&form.symmetric).map_err(|e| e.at(Stage::ChiExtract))?;
    let fact = Factorization {
        n: b.n,
        chi,
        rank: form.rank(),
        darboux_basis: form.darboux.basis.clone(),
        kernel_basis: form.darboux.kernel.clone(),
        uniform_pairing: form.darboux.uniform_pairing(),
        pairings: form.darboux.pairings,
        matrix: form.matrix,
    };
    debug_assert_eq!(fact.rebuild(), b.b);
    Ok(fact)
}

/// Polynomials in the linear coordinates `y_k(z) = κ_k · z` dual to the
/// kernel vectors `κ_k`, all monomials in the `y_k` up to `max_degree`.
pub fn kernel_dual_monomials(n: usize, kernel: &[Vec<Coeff>], max_degree: u32, space_degree: u32) -> Vec<PhasePoly> {
    let space = spaces::phase_space(n, space_degree);
    let coords: Vec<Poly> = kernel
        .iter()
        .map(|k| {
            k.iter()
                .enumerate()
                .fold(Poly::zero(&space), |acc, (j, c)| &acc + &Poly::var(&space, j).scale(c))
        })
        .collect();
    exponent_tuples(coords.len(), max_degree)
        .into_iter()
        .map(|exps| {
            let p = exps
                .iter()
                .zip(&coords)
                .fold(Poly::one(&space), |acc, (&e, y)| &acc * &y.pow(e));
            PhasePoly::new(n, p).expect("phase space")
        })
        .collect()
}

/// All exponent tuples of length `k` with total at most `max_degree`,
/// ordered by total degree then lexicographically.
pub fn exponent_tuples(k: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=max_degree {
        let mut cur = alloc::vec![0u32; k];
        fill(&mut out, &mut cur, 0, total);
        if k == 0 {
            break;
        }
    }
    out
}

fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
    if pos == cur.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill(out, cur, pos + 1, left - e);
    }
    cur[pos] = 0;
}

/// All phase-space monomials of total degree at most `max_degree`.
pub fn phase_monomials(space: &alloc::sync::Arc<crate::algebra::Space>, max_degree: u32) -> Vec<PhasePoly> {
    exponent_tuples(space.len(), max_degree)
        .into_iter()
        .map(|e| PhasePoly::new(space.len() / 2, Poly::monomial(space, Monomial::from_exponents(e), Coeff::one())).expect("phase space"))
        .collect()
}

/// A basis of the center up to `max_degree`: monomials in the coordinates
/// dual to `Ker M`. Only `{1}` when `M` is nondegenerate.
pub fn center_basis(b: &RawKernelExponent, max_degree: u32) -> Result<Vec<PhasePoly>> {
    let fact = factorize(b)?;
    Ok(kernel_dual_monomials(b.n, &fact.kernel_basis, max_degree, b.b.space().max_degree()))
}

/// True iff `f ⋆ g = g ⋆ f` for every monomial `g` of degree ≤ `max_degree`.
pub fn is_central(f: &PhasePoly, kernel: &StarKernel, max_degree: u32) -> Result<bool> {
    for g in phase_monomials(f.poly().space(), max_degree) {
        if star(f, &g, kernel)? != star(&g, f, kernel)? {
            return Ok(false);
        }
    }
    Ok(true)
}
