//! Bracket kernels `A(σ,σ′)`: axiom checks, extraction of `ω`,
//! classification of the generating function `h`, and recovery of the
//! normal form
//!
//! ```text
//! A(σ,σ′) = exp(χ(σ) + χ(σ′) − χ(σ+σ′)) · h(σᵀ·ω·σ′)
//! ```
//!
//! Raw kernels are polynomials, i.e. truncations of entire functions, so
//! every classification here holds up to the fitted degree.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::poly::{binomial, factorial};
use crate::algebra::{darboux, Coeff, Darboux, Matrix, Monomial, Poly, Space, Term};
use crate::error::{Error, Result, Stage};
use crate::kernel::{exponent_tuples, kernel_dual_monomials, phase_monomials};
use crate::spaces::{self, coboundary, kernel_at, kernel_dimension, sigma_dimension, slot_space, swap_slots};
use crate::star::{bidifferential, PhasePoly, StarKernel};
use alloc::sync::Arc;

/// A bracket kernel on the two-slot space `u1..u2n, v1..v2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawLieKernel {
    n: usize,
    a: Poly,
}

impl RawLieKernel {
    pub fn new(a: Poly) -> Result<Self> {
        let n = kernel_dimension(&a)?;
        Ok(RawLieKernel { n, a })
    }

    /// `σ′∧σ = Σ_k v_k u_{n+k} − v_{n+k} u_k`.
    pub fn poisson(n: usize) -> Self {
        let two = slot_space(n, 2, crate::algebra::DEFAULT_MAX_DEGREE);
        RawLieKernel {
            n,
            a: wedge(&two, n),
        }
    }

    /// `sinh(μ·σ′∧σ)/μ` through `x^order`.
    pub fn moyal(n: usize, order: u32) -> Self {
        let two = slot_space(n, 2, crate::algebra::DEFAULT_MAX_DEGREE);
        let x = wedge(&two, n);
        let mut a = Poly::zero(&two);
        let mut k = 1;
        while k <= order {
            let c = Coeff::mu_pow(k as usize - 1) / Coeff::from_int(factorial(k));
            a = &a + &x.pow(k).scale(&c);
            k += 2;
        }
        RawLieKernel { n, a }
    }

    /// The bracket kernel `(e^b − e^{b(σ′,σ)})/(2μ)` of a star product,
    /// truncated at total degree `degree`.
    pub fn from_star_kernel(k: &StarKernel, degree: u32) -> Result<Self> {
        let b = k.exponent();
        let e = b.truncated_exp(degree)?;
        let es = swap_slots(b).truncated_exp(degree)?;
        let a = (&e - &es).scale(&(Coeff::from_frac(1, 2) / Coeff::mu()));
        RawLieKernel::new(a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &Poly {
        &self.a
    }
}

fn wedge(two: &Arc<Space>, n: usize) -> Poly {
    let d = 2 * n;
    (0..n).fold(Poly::zero(two), |acc, k| {
        let t = &Poly::var(two, d + k) * &Poly::var(two, n + k);
        let s = &Poly::var(two, d + n + k) * &Poly::var(two, k);
        &acc + &(&t - &s)
    })
}

/// `σᵀ·ω·σ′ = Σ ω_ij u_i v_j`.
fn bilinear_uv(omega: &Matrix, two: &Arc<Space>) -> Poly {
    let d = omega.rows();
    let mut out = Poly::zero(two);
    for i in 0..d {
        for j in 0..d {
            let c = omega.get(i, j);
            if !c.is_zero() {
                out = &out + &(&Poly::var(two, i) * &Poly::var(two, d + j)).scale(c);
            }
        }
    }
    out
}

/// `{f, g}_A`: the kernel applied once as a bidifferential operator.
pub fn lie_bracket(f: &PhasePoly, g: &PhasePoly, a: &RawLieKernel) -> Result<PhasePoly> {
    bidifferential(f, g, &a.a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieViolation {
    Antisymmetry(Term),
    Jacobi(Term),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAxiomReport {
    /// `A(σ,σ′) + A(σ′,σ)`.
    pub antisymmetry: Poly,
    /// `Σ_cyc A(σ+σ′,σ″)·A(σ,σ′)` on the three-slot space.
    pub jacobi: Poly,
    /// The terms of `A(0,σ′)`.
    pub constants: Poly,
}

impl LieAxiomReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry.is_zero() && self.jacobi.is_zero()
    }

    pub fn constants_annihilate(&self) -> bool {
        self.constants.is_zero()
    }

    pub fn violation(&self) -> Option<LieViolation> {
        if let Some(t) = self.antisymmetry.lowest_term() {
            return Some(LieViolation::Antisymmetry(t));
        }
        self.jacobi.lowest_term().map(LieViolation::Jacobi)
    }

    /// Jacobi defect split by Laurent order in μ.
    pub fn jacobi_by_mu_order(&self) -> Option<BTreeMap<i64, Poly>> {
        self.jacobi.mu_orders()
    }

    pub fn antisymmetry_by_mu_order(&self) -> Option<BTreeMap<i64, Poly>> {
        self.antisymmetry.mu_orders()
    }
}

pub fn lie_axiom_check(a: &RawLieKernel) -> LieAxiomReport {
    let d = 2 * a.n;
    let antisymmetry = &a.a + &swap_slots(&a.a);
    let three = slot_space(a.n, 3, a.a.space().max_degree());
    let cyclic = [[0usize, 1, 2], [1, 2, 0], [2, 0, 1]];
    let mut jacobi = Poly::zero(&three);
    for [s, t, r] in cyclic {
        let outer = kernel_at(&a.a, &three, &[s, t], &[r]);
        let inner = kernel_at(&a.a, &three, &[s], &[t]);
        jacobi = &jacobi + &(&outer * &inner);
    }
    let constants = a.a.filter_terms(|m| m.degree_in(0..d) == 0);
    LieAxiomReport {
        antisymmetry,
        jacobi,
        constants,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaData {
    /// `ω_ij` is the coefficient of `u_i v_j`.
    pub omega: Matrix,
    pub darboux: Darboux,
}

impl OmegaData {
    pub fn rank(&self) -> usize {
        self.darboux.rank()
    }

    pub fn kernel(&self) -> &[Vec<Coeff>] {
        &self.darboux.kernel
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.darboux.is_nondegenerate()
    }
}

/// Read `ω` off the part of `A` linear in either slot.
///
/// Terms linear in one slot must be linear in the other as well; all
/// offenders are collected and the leading one is reported.
pub fn extract_omega(a: &RawLieKernel) -> Result<OmegaData> {
    let d = 2 * a.n;
    let constants = a.a.filter_terms(|m| m.degree_in(0..d) == 0);
    if let Some(t) = constants.lowest_term() {
        return Err(Error::ConstantsNotAnnihilated(t));
    }
    let offending = a.a.filter_terms(|m| {
        let (du, dv) = (m.degree_in(0..d), m.degree_in(d..2 * d));
        (du == 1) != (dv == 1)
    });
    if let Some(t) = offending.leading_term() {
        return Err(Error::Nonlinear(t));
    }
    let mut omega = Matrix::zeros(d, d);
    for (m, c) in a.a.terms() {
        let e = m.exponents();
        if m.degree_in(0..d) == 1 && m.degree_in(d..2 * d) == 1 {
            let i = (0..d).find(|&k| e[k] == 1).expect("u-degree 1");
            let j = (d..2 * d).find(|&k| e[k] == 1).expect("v-degree 1") - d;
            omega.set(i, j, c.clone());
        }
    }
    if !omega.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let darboux = darboux(&omega);
    Ok(OmegaData { omega, darboux })
}

/// Shape of `h(x) = Σ a_{2k+1} x^{2k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HClass {
    Zero,
    Linear { c: Coeff },
    /// `h = c·sinh(μ′x)` reported as `μ′²` and `c·μ′ = a₁`.
    Sinh { mu_sq: Coeff, c_mu: Coeff },
    /// The first odd index where the series leaves the admissible family.
    Neither { index: usize, expected: Coeff, found: Coeff },
}

impl HClass {
    pub fn tag(&self) -> &'static str {
        match self {
            HClass::Zero => "zero",
            HClass::Linear { .. } => "linear",
            HClass::Sinh { .. } => "sinh",
            HClass::Neither { .. } => "neither",
        }
    }
}

impl fmt::Display for HClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HClass::Zero => f.write_str("Zero"),
            HClass::Linear { c } => write!(f, "Linear(c = {c})"),
            HClass::Sinh { mu_sq, c_mu } => write!(f, "Sinh(mu^2 = {mu_sq}, c*mu = {c_mu})"),
            HClass::Neither { index, expected, found } => {
                write!(f, "Neither(index {index}: expected {expected}, found {found})")
            }
        }
    }
}

/// Classify `[a1, a3, a5, …]` against `h″ = μ′²·h`, `h(0) = 0`.
pub fn classify_h(series: &[Coeff]) -> Result<HClass> {
    let Some(a1) = series.first() else {
        return Err(Error::EmptySeries);
    };
    if a1.is_zero() {
        // h′(0) = 0 forces h ≡ 0.
        return Ok(match series.iter().enumerate().find(|(_, a)| !a.is_zero()) {
            None => HClass::Zero,
            Some((k, a)) => HClass::Neither {
                index: 2 * k + 1,
                expected: Coeff::zero(),
                found: a.clone(),
            },
        });
    }
    let a3 = series.get(1).cloned().unwrap_or_else(Coeff::zero);
    let mu_sq = &(&Coeff::from_int(6) * &a3) / a1;
    for k in 1..series.len().saturating_sub(1) {
        let order = 2 * k as i64 + 1;
        let expected = &(&mu_sq * &series[k]) / &Coeff::from_int((order + 1) * (order + 2));
        if expected != series[k + 1] {
            return Ok(HClass::Neither {
                index: 2 * k + 3,
                expected,
                found: series[k + 1].clone(),
            });
        }
    }
    Ok(if mu_sq.is_zero() {
        HClass::Linear { c: a1.clone() }
    } else {
        HClass::Sinh {
            mu_sq,
            c_mu: a1.clone(),
        }
    })
}

/// The normal form `exp(δχ)·h(σᵀ·ω·σ′)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredLieKernel {
    n: usize,
    chi: Poly,
    omega: Matrix,
    h_series: Vec<Coeff>,
}

impl StructuredLieKernel {
    /// Constant and linear parts of `chi` are dropped: they leave the
    /// coboundary unchanged.
    pub fn new(chi: Poly, omega: Matrix, h_series: Vec<Coeff>) -> Result<Self> {
        let n = sigma_dimension(&chi)?;
        if omega.rows() != 2 * n || omega.cols() != 2 * n {
            return Err(Error::MatrixShape {
                expected: 2 * n,
                rows: omega.rows(),
                cols: omega.cols(),
            });
        }
        if !omega.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        if h_series.is_empty() {
            return Err(Error::EmptySeries);
        }
        let chi = chi.filter_terms(|m| m.degree() >= 2);
        Ok(StructuredLieKernel { n, chi, omega, h_series })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chi(&self) -> &Poly {
        &self.chi
    }

    pub fn omega(&self) -> &Matrix {
        &self.omega
    }

    pub fn h_series(&self) -> &[Coeff] {
        &self.h_series
    }

    /// Expand to a polynomial kernel truncated at total degree `degree`.
    pub fn expand(&self, degree: u32) -> RawLieKernel {
        let two = slot_space(self.n, 2, self.chi.space().max_degree().max(degree));
        let chi = self.chi.reindex(&spaces::sigma_space(self.n, two.max_degree()), &identity(2 * self.n));
        let x = bilinear_uv(&self.omega, &two);
        let mut h = Poly::zero(&two);
        for (k, a) in self.h_series.iter().enumerate() {
            let e = 2 * k as u32 + 1;
            if 2 * e > degree {
                break;
            }
            h = &h + &x.pow(e).scale(a);
        }
        let dressing = coboundary(&chi)
            .and_then(|c| c.truncated_exp(degree.saturating_sub(2)))
            .expect("gauge-fixed χ has no constant term");
        RawLieKernel {
            n: self.n,
            a: (&dressing * &h).truncate(degree),
        }
    }
}

fn identity(d: usize) -> Vec<usize> {
    (0..d).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theorem2Outcome {
    /// `ω` nondegenerate: the kernel is a dressed Moyal or Poisson bracket.
    Classified {
        chi: Poly,
        h_series: Vec<Coeff>,
        class: HClass,
    },
    /// `ω` degenerate: the center is nontrivial.
    Degenerate {
        kernel: Vec<Vec<Coeff>>,
        center: Vec<PhasePoly>,
        /// Every generator brackets to zero with all monomials up to
        /// `fit_degree`.
        verified: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem2Report {
    pub fit_degree: u32,
    pub omega: OmegaData,
    pub outcome: Theorem2Outcome,
}

impl Theorem2Report {
    /// Which bracket the input is isomorphic to through the ordering change
    /// `Ω = e^χ`, if classified.
    pub fn isomorphic_to(&self) -> Option<&'static str> {
        match &self.outcome {
            Theorem2Outcome::Classified { class, .. } => match class {
                HClass::Sinh { .. } => Some("moyal"),
                HClass::Linear { .. } => Some("poisson"),
                _ => None,
            },
            Theorem2Outcome::Degenerate { .. } => None,
        }
    }
}

/// Recover `(χ, ω, h)` from a raw kernel, degree by degree up to
/// `fit_degree`, and verify the reconstruction.
///
/// The linear coefficient `a₁` is absorbed into `ω`, so the recovered
/// series always starts with 1. At total degree `d` the unknowns are the
/// degree `d−2` part of `χ` and, for odd `d/2 ≥ 3`, the coefficient
/// `a_{d/2}`. Assumes the axioms hold; a nonzero residual means the input
/// is not of normal form at that degree.
pub fn theorem2_pipeline(a: &RawLieKernel, fit_degree: u32) -> Result<Theorem2Report> {
    let omega = extract_omega(a).map_err(|e| e.at(Stage::ExtractOmega))?;
    if !omega.is_nondegenerate() {
        let kernel = omega.kernel().to_vec();
        let space_degree = a.a.space().max_degree();
        let center = kernel_dual_monomials(a.n, &kernel, fit_degree, space_degree);
        let verified = verify_center(&center, a, fit_degree)?;
        return Ok(Theorem2Report {
            fit_degree,
            omega,
            outcome: Theorem2Outcome::Degenerate { kernel, center, verified },
        });
    }
    let (chi, h_series) = fit(a, &omega.omega, fit_degree).map_err(|e| e.at(Stage::Fit))?;
    let class = classify_h(&h_series)?;
    Ok(Theorem2Report {
        fit_degree,
        omega,
        outcome: Theorem2Outcome::Classified { chi, h_series, class },
    })
}

/// True iff every generator brackets to zero with all monomials of degree
/// at most `degree`.
pub fn verify_center(center: &[PhasePoly], a: &RawLieKernel, degree: u32) -> Result<bool> {
    let space = spaces::phase_space(a.n, a.a.space().max_degree());
    let tests = phase_monomials(&space, degree);
    for f in center {
        for g in &tests {
            if !lie_bracket(f, g, a)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn fit(a: &RawLieKernel, omega: &Matrix, fit_degree: u32) -> Result<(Poly, Vec<Coeff>)> {
    let n = a.n;
    let d2 = 2 * n;
    let max = a.a.space().max_degree();
    let two = a.a.space().clone();
    let sigma = spaces::sigma_space(n, max);
    let x = bilinear_uv(omega, &two);
    let mut chi = Poly::zero(&sigma);
    let mut series = alloc::vec![Coeff::one()];
    let model = |chi: &Poly, series: &[Coeff], d: u32| -> Result<Poly> {
        let s = StructuredLieKernel::new(chi.clone(), omega.clone(), series.to_vec())?;
        Ok(s.expand(d).a.homogeneous_part(d))
    };
    for d in 3..=fit_degree {
        let residual = &a.a.homogeneous_part(d) - &model(&chi, &series, d)?;
        let mut columns: Vec<Poly> = Vec::new();
        let mut chi_monos: Vec<Monomial> = Vec::new();
        if d >= 4 {
            for e in exponent_tuples(d2, d - 2) {
                if e.iter().sum::<u32>() != d - 2 {
                    continue;
                }
                let m = Monomial::from_exponents(e);
                let delta = coboundary(&Poly::monomial(&sigma, m.clone(), Coeff::one()))?;
                columns.push(&delta * &x);
                chi_monos.push(m);
            }
        }
        let new_a = d % 2 == 0 && (d / 2) % 2 == 1 && d / 2 >= 3;
        if new_a {
            columns.push(x.pow(d / 2));
        }
        let solution = solve_columns(&columns, &residual);
        let Some(values) = solution else {
            return Err(Error::FitResidual {
                degree: d,
                witness: residual_witness(&columns, &residual),
            });
        };
        for (m, c) in chi_monos.iter().zip(&values) {
            chi = &chi + &Poly::monomial(&sigma, m.clone(), c.clone());
        }
        if new_a {
            // Even-index entries of h are absent; pad a skipped odd index.
            while series.len() < (d as usize / 2 - 1) / 2 {
                series.push(Coeff::zero());
            }
            series.push(values.last().cloned().unwrap_or_else(Coeff::zero));
        }
    }
    while series.len() < (fit_degree as usize / 2).div_ceil(2) {
        series.push(Coeff::zero());
    }
    let rebuilt = StructuredLieKernel::new(chi.clone(), omega.clone(), series.clone())?.expand(fit_degree);
    let diff = &rebuilt.a - &a.a.truncate(fit_degree);
    if let Some(w) = diff.lowest_term() {
        return Err(Error::FitResidual {
            degree: w.monomial.degree(),
            witness: w,
        });
    }
    Ok((chi, series))
}

/// Solve `Σ x_j · columns[j] = target` coefficientwise. `None` if
/// inconsistent.
fn solve_columns(columns: &[Poly], target: &Poly) -> Option<Vec<Coeff>> {
    if columns.is_empty() {
        return target.is_zero().then(Vec::new);
    }
    let mut rows: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in columns.iter().chain(core::iter::once(target)) {
        for (m, _) in p.terms() {
            let next = rows.len();
            rows.entry(m).or_insert(next);
        }
    }
    let mut mat = Matrix::zeros(rows.len(), columns.len());
    for (j, p) in columns.iter().enumerate() {
        for (m, c) in p.terms() {
            mat.set(rows[m], j, c.clone());
        }
    }
    let mut rhs = alloc::vec![Coeff::zero(); rows.len()];
    for (m, c) in target.terms() {
        rhs[rows[m]] = c.clone();
    }
    let (x, consistent) = mat.solve(&rhs);
    consistent.then_some(x)
}

/// A term of `target` outside the column span, found by a least-index
/// heuristic: the lowest term of `target` whose monomial no column touches,
/// else the lowest term of `target`.
fn residual_witness(columns: &[Poly], target: &Poly) -> Term {
    let untouched = target.filter_terms(|m| columns.iter().all(|c| c.coeff(m).is_zero()));
    untouched
        .lowest_term()
        .or_else(|| target.lowest_term())
        .expect("inconsistent system has a nonzero target")
}

/// One entry `b_{rj,sk}` multiplies `(∂_q^j ∂_p^{r−j} f)(∂_q^k ∂_p^{s−k} g)/(r!·s!)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidiffTable {
    pub rmax: u32,
    pub smax: u32,
    /// Nonzero entries keyed by `(r, j, s, k)`.
    pub entries: BTreeMap<(u32, u32, u32, u32), Coeff>,
}

impl BidiffTable {
    pub fn get(&self, r: u32, j: u32, s: u32, k: u32) -> Coeff {
        self.entries.get(&(r, j, s, k)).cloned().unwrap_or_else(Coeff::zero)
    }

    /// `Σ b_{rj,sk}/(r!s!) · ∂_q^j ∂_p^{r−j} f · ∂_q^k ∂_p^{s−k} g`.
    pub fn reconstruct(&self, f: &PhasePoly, g: &PhasePoly) -> Result<PhasePoly> {
        if f.n() != 1 || g.n() != 1 {
            return Err(Error::RequiresOneDimension(f.n().max(g.n())));
        }
        let space = f.poly().space().clone();
        let mut out = Poly::zero(&space);
        for (&(r, j, s, k), b) in &self.entries {
            let df = f.poly().differentiate(0, j)?.differentiate(1, r - j)?;
            let dg = g.poly().differentiate(0, k)?.differentiate(1, s - k)?;
            let w = b / &Coeff::from_int(factorial(r) * factorial(s));
            out = &out + &(&df * &dg).scale(&w);
        }
        PhasePoly::new(1, out)
    }
}

/// `b_{rj,sk} = C(r,j)·C(s,k)·(−i)^{r+s}·∂_η^j ∂_ξ^{r−j} ∂_{η′}^k ∂_{ξ′}^{s−k} A(0,0)`
/// for `r ≤ rmax`, `s ≤ smax`.
pub fn bidiff_coefficients(a: &RawLieKernel, rmax: u32, smax: u32) -> Result<BidiffTable> {
    if a.n != 1 {
        return Err(Error::RequiresOneDimension(a.n));
    }
    let mut entries = BTreeMap::new();
    for (m, c) in a.a.terms() {
        let e = m.exponents();
        let (j, r) = (e[0], e[0] + e[1]);
        let (k, s) = (e[2], e[2] + e[3]);
        if r > rmax || s > smax {
            continue;
        }
        let weight = binomial(r, j)
            * binomial(s, k)
            * factorial(j)
            * factorial(r - j)
            * factorial(k)
            * factorial(s - k);
        let phase = Coeff::from_gauss(crate::algebra::GaussRat::neg_i_pow(r + s));
        entries.insert((r, j, s, k), &(c * &phase) * &Coeff::from_int(weight));
    }
    Ok(BidiffTable { rmax, smax, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::star::bracket;
    use alloc::vec;

    fn q(k: i64) -> Coeff {
        Coeff::from_int(k)
    }

    fn two(n: usize) -> Arc<Space> {
        slot_space(n, 2, 64)
    }

    fn var(s: &Arc<Space>, name: &str) -> Poly {
        Poly::named_var(s, name).unwrap()
    }

    #[test]
    fn poisson_kernel_passes() {
        let r = lie_axiom_check(&RawLieKernel::poisson(1));
        assert!(r.passed());
        assert!(r.constants_annihilate());
    }

    #[test]
    fn even_power_is_not_antisymmetric() {
        let a = RawLieKernel::new(RawLieKernel::poisson(1).poly().pow(2)).unwrap();
        let r = lie_axiom_check(&a);
        assert!(matches!(r.violation(), Some(LieViolation::Antisymmetry(_))));
    }

    #[test]
    fn sinh_truncation_defect_sits_at_mu4() {
        let r = lie_axiom_check(&RawLieKernel::moyal(1, 3));
        assert!(r.antisymmetry.is_zero());
        let orders = r.jacobi_by_mu_order().unwrap();
        let nonzero: Vec<i64> = orders.iter().filter(|(_, p)| !p.is_zero()).map(|(k, _)| *k).collect();
        assert_eq!(nonzero, vec![4]);
        assert!(r.jacobi.at_mu_zero().unwrap().is_zero());
    }

    #[test]
    fn omega_of_moyal_is_minus_j() {
        let o = extract_omega(&RawLieKernel::moyal(1, 3)).unwrap();
        assert_eq!(o.omega, Matrix::canonical_symplectic(1).scale(&q(-1)));
        assert_eq!(o.rank(), 2);
    }

    #[test]
    fn omega_of_half_poisson_is_degenerate() {
        let s = two(2);
        let a = &(&var(&s, "v1") * &var(&s, "u3")) - &(&var(&s, "v3") * &var(&s, "u1"));
        let o = extract_omega(&RawLieKernel::new(a).unwrap()).unwrap();
        assert_eq!(o.rank(), 2);
        let e = |k: usize| {
            let mut v = vec![Coeff::zero(); 4];
            v[k] = Coeff::one();
            v
        };
        assert_eq!(o.kernel(), &[e(1), e(3)]);
    }

    #[test]
    fn quadratic_first_slot_is_rejected() {
        let s = two(1);
        let a = &(&var(&s, "u1").pow(2) * &var(&s, "v2")) - &(&var(&s, "v1").pow(2) * &var(&s, "u2"));
        match extract_omega(&RawLieKernel::new(a).unwrap()) {
            Err(Error::Nonlinear(t)) => assert_eq!(alloc::format!("{t}"), "u1^2*v2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn omega_matches_star_kernel_matrix() {
        let k = StarKernel::standard(1);
        let a = RawLieKernel::from_star_kernel(&k, 6).unwrap();
        let o = extract_omega(&a).unwrap();
        assert_eq!(o.omega, k.matrix().scale(&(Coeff::from_int(-1) / Coeff::mu())));
    }

    #[test]
    fn classify_fixtures() {
        let f = Coeff::from_frac;
        assert_eq!(
            classify_h(&[q(1), f(1, 6), f(1, 120), f(1, 5040)]).unwrap(),
            HClass::Sinh { mu_sq: q(1), c_mu: q(1) }
        );
        assert_eq!(classify_h(&[q(1), q(0), q(0), q(0)]).unwrap(), HClass::Linear { c: q(1) });
        assert_eq!(
            classify_h(&[q(2), q(3), f(27, 20)]).unwrap(),
            HClass::Sinh { mu_sq: q(9), c_mu: q(2) }
        );
        assert_eq!(
            classify_h(&[q(1), q(1), q(0)]).unwrap(),
            HClass::Neither { index: 5, expected: f(3, 10), found: q(0) }
        );
        assert_eq!(classify_h(&[q(0), q(0)]).unwrap(), HClass::Zero);
        assert_eq!(classify_h(&[]), Err(Error::EmptySeries));
    }

    #[test]
    fn pipeline_recovers_moyal() {
        let r = theorem2_pipeline(&RawLieKernel::moyal(1, 5), 10).unwrap();
        let Theorem2Outcome::Classified { chi, class, .. } = r.outcome else { panic!() };
        assert!(chi.is_zero());
        assert_eq!(class, HClass::Sinh { mu_sq: Coeff::mu_pow(2), c_mu: q(1) });
    }

    #[test]
    fn pipeline_recovers_dressed_poisson() {
        let sigma = spaces::sigma_space(1, 64);
        let eta2 = var(&sigma, "u1").pow(2);
        let planted = StructuredLieKernel::new(eta2.clone(), Matrix::canonical_symplectic(1).scale(&q(-1)), vec![q(1)]).unwrap();
        let r = theorem2_pipeline(&planted.expand(8), 8).unwrap();
        assert_eq!(r.isomorphic_to(), Some("poisson"));
        let Theorem2Outcome::Classified { chi, class, .. } = r.outcome else { panic!() };
        assert_eq!(chi, eta2);
        assert_eq!(class, HClass::Linear { c: q(1) });
    }

    #[test]
    fn pipeline_reports_center() {
        let s = two(2);
        let a = &(&var(&s, "v1") * &var(&s, "u3")) - &(&var(&s, "v3") * &var(&s, "u1"));
        let r = theorem2_pipeline(&RawLieKernel::new(a).unwrap(), 2).unwrap();
        let Theorem2Outcome::Degenerate { center, verified, .. } = r.outcome else { panic!() };
        assert!(verified);
        assert_eq!(center.len(), 6);
    }

    #[test]
    fn pipeline_rejects_non_normal_form() {
        let s = two(1);
        let x = RawLieKernel::poisson(1).poly().clone();
        let a = &x + &(&x * &(&var(&s, "u1").pow(2) * &var(&s, "v1").pow(2)));
        let e = theorem2_pipeline(&RawLieKernel::new(a).unwrap(), 6).unwrap_err();
        assert!(matches!(e.root(), Error::FitResidual { degree: 6, .. }), "{e:?}");
    }

    #[test]
    fn poisson_table() {
        let t = bidiff_coefficients(&RawLieKernel::poisson(1), 2, 2).unwrap();
        assert_eq!(t.get(1, 1, 1, 0), q(1));
        assert_eq!(t.get(1, 0, 1, 1), q(-1));
        assert!(t.entries.keys().all(|&(r, _, s, _)| r > 0 && s > 0));
    }

    #[test]
    fn sinh_table_reconstructs_bracket() {
        let a = RawLieKernel::moyal(1, 3);
        let t = bidiff_coefficients(&a, 3, 3).unwrap();
        assert!(t.entries.keys().all(|&(r, _, s, _)| (r + s) % 2 == 0));
        let sp = PhasePoly::space(1);
        let f = PhasePoly::monomial(&sp, &[2], &[1], q(1));
        let g = PhasePoly::monomial(&sp, &[1], &[2], q(1));
        assert_eq!(t.reconstruct(&f, &g).unwrap(), bracket(&f, &g, &StarKernel::moyal(1)).unwrap());
    }

    #[test]
    fn table_requires_one_dimension() {
        assert_eq!(bidiff_coefficients(&RawLieKernel::poisson(2), 1, 1), Err(Error::RequiresOneDimension(2)));
    }
}
