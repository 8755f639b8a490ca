//! Sparse multivariate polynomials over [`Coeff`].

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

use super::coeff::{join_terms, Coeff};
use crate::error::{Error, Result};

/// Default total-degree bound for products and powers.
pub const DEFAULT_MAX_DEGREE: u32 = 64;

/// A named, ordered list of variables.
#[derive(Clone, Debug, Eq)]
pub struct Space {
    names: Vec<String>,
    max_degree: u32,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Space {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Space> {
        Space::with_max_degree(names, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        max_degree: u32,
    ) -> Arc<Space> {
        Arc::new(Space {
            names: names.into_iter().map(Into::into).collect(),
            max_degree,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn describe(&self) -> String {
        let mut s = String::from("[");
        s.push_str(&self.names.join(", "));
        s.push(']');
        s
    }
}

/// An exponent vector, one entry per variable of the owning space.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree_in(&self, range: core::ops::Range<usize>) -> u32 {
        self.0[range].iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Renders with the variable names of `space`, e.g. `q1^2*p1`.
    pub fn render(&self, space: &Space) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (e, name) in self.0.iter().zip(space.names()) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                k => {
                    let mut s = String::new();
                    let _ = write!(s, "{name}^{k}");
                    parts.push(s);
                }
            }
        }
        parts.join("*")
    }
}

/// Graded reverse order used for printing: higher total degree first, then
/// lexicographically larger exponent vectors first.
fn display_order(a: &Monomial, b: &Monomial) -> Ordering {
    b.degree().cmp(&a.degree()).then_with(|| b.cmp(a))
}

/// A single term, kept alongside its space for reporting.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub space: Arc<Space>,
    pub monomial: Monomial,
    pub coeff: Coeff,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rest = self.monomial.render(&self.space);
        f.write_str(&join_terms(&self.coeff.signed_terms(&rest)))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    space: Arc<Space>,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero(space: &Arc<Space>) -> Self {
        Poly {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &Arc<Space>, c: Coeff) -> Self {
        let mut p = Poly::zero(space);
        p.add_term(Monomial::one(space.len()), c);
        p
    }

    pub fn one(space: &Arc<Space>) -> Self {
        Poly::constant(space, Coeff::one())
    }

    pub fn var(space: &Arc<Space>, idx: usize) -> Self {
        Poly::monomial(space, Monomial::var(space.len(), idx), Coeff::one())
    }

    pub fn named_var(space: &Arc<Space>, name: &str) -> Result<Self> {
        let idx = space
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Poly::var(space, idx))
    }

    pub fn monomial(space: &Arc<Space>, m: Monomial, c: Coeff) -> Self {
        assert_eq!(m.0.len(), space.len(), "monomial arity differs from space");
        let mut p = Poly::zero(space);
        p.add_term(m, c);
        p
    }

    /// Build from `(exponents, coefficient)` pairs; duplicates are summed.
    pub fn from_terms(space: &Arc<Space>, terms: impl IntoIterator<Item = (Vec<u32>, Coeff)>) -> Self {
        let mut p = Poly::zero(space);
        for (e, c) in terms {
            assert_eq!(e.len(), space.len(), "monomial arity differs from space");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn nvars(&self) -> usize {
        self.space.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn coeff_of(&self, exps: &[u32]) -> Coeff {
        self.coeff(&Monomial(exps.to_vec()))
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Monomial::one(self.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// The first term in display order, if any.
    pub fn leading_term(&self) -> Option<Term> {
        self.terms
            .iter()
            .min_by(|a, b| display_order(a.0, b.0))
            .map(|(m, c)| Term {
                space: self.space.clone(),
                monomial: m.clone(),
                coeff: c.clone(),
            })
    }

    /// The last term in display order: lowest degree first. Used for
    /// witnesses, which read best when small.
    pub fn lowest_term(&self) -> Option<Term> {
        self.terms
            .iter()
            .max_by(|a, b| display_order(a.0, b.0))
            .map(|(m, c)| Term {
                space: self.space.clone(),
                monomial: m.clone(),
                coeff: c.clone(),
            })
    }

    pub fn same_space(&self, other: &Poly) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left: self.space.describe(),
                right: other.space.describe(),
            })
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.same_space(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.same_space(other)?;
        Ok(self.add_unchecked(&-other))
    }

    /// Product with the space check and the degree guard.
    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_space(other)?;
        let d = self.degree().unwrap_or(0) + other.degree().unwrap_or(0);
        self.guard(d)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_pow(&self, k: u32) -> Result<Poly> {
        let d = self.degree().unwrap_or(0).saturating_mul(k);
        self.guard(d)?;
        Ok(self.pow(k))
    }

    pub(crate) fn guard(&self, degree: u32) -> Result<()> {
        let limit = self.space.max_degree();
        if degree > limit {
            Err(Error::DegreeBound { degree, limit })
        } else {
            Ok(())
        }
    }

    fn add_unchecked(&self, other: &Poly) -> Poly {
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(&self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.space);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.space);
        }
        Poly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Apply `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Coeff) -> Coeff) -> Poly {
        let mut out = Poly::zero(&self.space);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Keep only terms satisfying `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        self.filter_terms(|m| m.degree() == d)
    }

    pub fn truncate(&self, max_degree: u32) -> Poly {
        self.filter_terms(|m| m.degree() <= max_degree)
    }

    /// Partial derivative `∂^order / ∂x_var^order`.
    pub fn differentiate(&self, var: usize, order: u32) -> Result<Poly> {
        if var >= self.nvars() {
            return Err(Error::UnknownVariable(alloc::format!("#{var}")));
        }
        let mut out = Poly::zero(&self.space);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e < order {
                continue;
            }
            let factor = falling(e, order);
            let mut exps = m.0.clone();
            exps[var] = e - order;
            out.add_term(Monomial(exps), c * &Coeff::from_int(factor));
        }
        Ok(out)
    }

    pub fn differentiate_named(&self, name: &str, order: u32) -> Result<Poly> {
        let var = self
            .space
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        self.differentiate(var, order)
    }

    /// Monomial substitution `x_k ↦ y_{map[k]}` into `target`. Several
    /// source variables may land on the same target variable.
    pub fn reindex(&self, target: &Arc<Space>, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars(), "reindex map arity");
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (k, &e) in m.0.iter().enumerate() {
                exps[map[k]] += e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Polynomial composition: substitute `images[k]` for variable `k`.
    /// All images must live in the same target space.
    pub fn substitute(&self, target: &Arc<Space>, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars(), "substitution arity");
        // powers[k][e] = images[k]^e, filled lazily
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(target, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[k].len() <= e {
                    let next = &powers[k][powers[k].len() - 1] * &images[k];
                    powers[k].push(next);
                }
                acc = &acc * &powers[k][e];
            }
            out = &out + &acc;
        }
        out
    }

    /// Evaluate at a point given as one coefficient per variable.
    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.nvars(), "evaluation arity");
        let mut total = Coeff::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v = &v * &x.pow(e);
                }
            }
            total = &total + &v;
        }
        total
    }

    /// `exp(self)` truncated at total degree `max_degree`. The constant term
    /// must vanish.
    pub fn truncated_exp(&self, max_degree: u32) -> Result<Poly> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm);
        }
        let min = self.min_degree().unwrap_or(1).max(1);
        let mut out = Poly::one(&self.space);
        let mut power = Poly::one(&self.space);
        let mut k = 0i64;
        loop {
            k += 1;
            power = (&power * self).truncate(max_degree);
            if power.is_zero() || (k as u32).saturating_mul(min) > max_degree {
                break;
            }
            out = &out + &power.scale(&Coeff::from_frac(1, factorial(k as u32)));
        }
        Ok(out)
    }

    /// Split by the variable ranges: returns, for each term, the
    /// per-range degrees. Used to test slot bidegrees.
    pub fn bidegrees(&self, split: usize) -> impl Iterator<Item = (u32, u32)> + '_ {
        let n = self.nvars();
        self.terms
            .keys()
            .map(move |m| (m.degree_in(0..split), m.degree_in(split..n)))
    }

    /// Group terms by the power of μ in their Laurent expansion. Returns
    /// `None` if some coefficient has a denominator that is not a power of μ.
    pub fn mu_orders(&self) -> Option<BTreeMap<i64, Poly>> {
        let mut out: BTreeMap<i64, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (k, g) in c.laurent()? {
                out.entry(k)
                    .or_insert_with(|| Poly::zero(&self.space))
                    .add_term(m.clone(), Coeff::from_gauss(g));
            }
        }
        Some(out)
    }

    /// Substitute μ = 0 in every coefficient.
    pub fn at_mu_zero(&self) -> core::result::Result<Poly, Term> {
        let mut out = Poly::zero(&self.space);
        for (m, c) in &self.terms {
            match c.at_mu_zero() {
                Some(v) => out.add_term(m.clone(), Coeff::from_gauss(v)),
                None => {
                    return Err(Term {
                        space: self.space.clone(),
                        monomial: m.clone(),
                        coeff: c.clone(),
                    })
                }
            }
        }
        Ok(out)
    }
}

pub(crate) fn falling(e: u32, order: u32) -> i64 {
    (0..order).map(|j| (e - j) as i64).product()
}

pub(crate) fn factorial(k: u32) -> i64 {
    (1..=k as i64).product()
}

pub(crate) fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    falling(n, k) / factorial(k)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut entries: Vec<(&Monomial, &Coeff)> = self.terms.iter().collect();
        entries.sort_by(|a, b| display_order(a.0, b.0));
        let mut signed = Vec::new();
        for (m, c) in entries {
            signed.extend(c.signed_terms(&m.render(&self.space)));
        }
        f.write_str(&join_terms(&signed))
    }
}

/// Operators panic on mismatched spaces; use the `checked_*` methods on
/// untrusted input.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("variable space mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("variable space mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.same_space(rhs).expect("variable space mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
