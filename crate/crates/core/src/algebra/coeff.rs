//! The coefficient field ℚ(i)(μ).
//!
//! A [`Coeff`] is a reduced fraction of two polynomials in μ with
//! Gaussian-rational coefficients. The denominator is always monic and
//! coprime to the numerator, so structural equality is field equality.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gauss::GaussRat;
use super::upoly::UPoly;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Coeff {
    num: UPoly,
    den: UPoly,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    pub fn one() -> Self {
        Coeff::from_gauss(GaussRat::one())
    }

    /// The formal deformation parameter μ.
    pub fn mu() -> Self {
        Coeff::mu_pow(1)
    }

    pub fn mu_pow(k: usize) -> Self {
        Coeff::from_upoly(UPoly::monomial(GaussRat::one(), k))
    }

    pub fn i() -> Self {
        Coeff::from_gauss(GaussRat::i())
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::from_gauss(GaussRat::from_int(n))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Coeff::from_gauss(GaussRat::from_frac(num, den))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Coeff::from_gauss(GaussRat::real(BigRational::from_integer(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Coeff::from_gauss(GaussRat::real(r))
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        Coeff::from_upoly(UPoly::constant(c))
    }

    pub fn from_upoly(num: UPoly) -> Self {
        Coeff {
            num,
            den: UPoly::one(),
        }
    }

    /// Build `num / den` and normalize. Returns `None` when `den` is zero.
    pub fn from_fraction(num: UPoly, den: UPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Coeff::normalized(num, den))
    }

    fn normalized(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Coeff::zero();
        }
        if den.is_one() {
            return Coeff { num, den };
        }
        let (num, den) = if den.is_monomial() {
            // den = c·μ^k: cancel common powers of μ without a full gcd.
            let k = den.low_order().unwrap_or(0);
            let shared = k.min(num.low_order().unwrap_or(0));
            (num.shift_down(shared), den.shift_down(shared))
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            Coeff { num, den }
        } else {
            let inv = lead.inv().expect("nonzero leading coefficient");
            Coeff {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is free of μ.
    pub fn is_scalar(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The scalar value when μ-free.
    pub fn as_scalar(&self) -> Option<GaussRat> {
        self.is_scalar().then(|| self.num.value_at_zero())
    }

    /// True when the numerator is polynomial in μ (denominator one).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        Some(Coeff::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &GaussRat) -> Coeff {
        if c.is_zero() {
            return Coeff::zero();
        }
        Coeff {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Coeff {
        let mut acc = Coeff::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at μ = 0; `None` when the denominator vanishes there.
    pub fn at_mu_zero(&self) -> Option<GaussRat> {
        let d0 = self.den.value_at_zero();
        let inv = d0.inv()?;
        Some(&self.num.value_at_zero() * &inv)
    }

    /// Laurent expansion in μ, available when the denominator is a pure
    /// power of μ. Entries are `(power, coefficient)` in increasing power.
    pub fn laurent(&self) -> Option<Vec<(i64, GaussRat)>> {
        if !self.den.is_monomial() {
            return None;
        }
        let shift = self.den.low_order().unwrap_or(0) as i64;
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as i64 - shift, c.clone()))
                .collect(),
        )
    }

    /// `self · μ^k` for possibly negative `k`.
    pub fn shift_mu(&self, k: i64) -> Coeff {
        if k >= 0 {
            self * &Coeff::mu_pow(k as usize)
        } else {
            Coeff::normalized(self.num.clone(), self.den.mul(&UPoly::monomial(GaussRat::one(), (-k) as usize)))
        }
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::zero()
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::from_int(n)
    }
}

impl From<GaussRat> for Coeff {
    fn from(c: GaussRat) -> Self {
        Coeff::from_gauss(c)
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Coeff::from_upoly(self.num.add(&rhs.num));
            }
            return Coeff::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        Coeff::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        if self.is_zero() || rhs.is_zero() {
            return Coeff::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Coeff::from_upoly(self.num.mul(&rhs.num));
        }
        Coeff::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

/// Panics on division by zero; use [`Coeff::inv`] for a checked inverse.
impl Div for &Coeff {
    type Output = Coeff;
    fn div(self, rhs: &Coeff) -> Coeff {
        self * &rhs.inv().expect("division by zero coefficient")
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: Coeff) -> Coeff {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

/// Writes one product term `scalar·mu^k·rest` into `out` without its sign.
/// Returns whether the term reads as negative.
pub(crate) fn write_term(out: &mut String, scalar: &GaussRat, mu_power: i64, rest: &str) -> bool {
    let negative = scalar.looks_negative();
    let abs = if negative { -scalar } else { scalar.clone() };
    let mut factors: Vec<String> = Vec::new();
    let bare = mu_power == 0 && rest.is_empty();
    if bare || !abs.is_one() {
        let mut s = String::new();
        let _ = write!(s, "{abs}");
        factors.push(s);
    }
    match mu_power {
        0 => {}
        1 => factors.push(String::from("mu")),
        k => {
            let mut s = String::new();
            let _ = write!(s, "mu^{k}");
            factors.push(s);
        }
    }
    if !rest.is_empty() {
        factors.push(String::from(rest));
    }
    out.push_str(&factors.join("*"));
    negative
}

/// Joins signed terms as `a + b - c`.
pub(crate) fn join_terms(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (k, (neg, t)) in terms.iter().enumerate() {
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(t);
    }
    out
}

impl Coeff {
    /// Signed printable terms, highest μ power first, each multiplied by
    /// `rest` (a monomial string, possibly empty).
    pub(crate) fn signed_terms(&self, rest: &str) -> Vec<(bool, String)> {
        if let Some(lt) = self.laurent() {
            return lt
                .iter()
                .rev()
                .map(|(k, c)| {
                    let mut s = String::new();
                    let neg = write_term(&mut s, c, *k, rest);
                    (neg, s)
                })
                .collect();
        }
        let num = Coeff::from_upoly(self.num.clone());
        let den = Coeff::from_upoly(self.den.clone());
        let mut s = String::new();
        let _ = write!(s, "({num})*({den})^-1");
        if !rest.is_empty() {
            s.push('*');
            s.push_str(rest);
        }
        alloc::vec![(false, s)]
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(&self.signed_terms("")))
    }
}
