//! Constant-coefficient differential operators built from a generating
//! polynomial by the substitution `σ_k → s·∂/∂z_{t(k)}`.

use alloc::vec;
use alloc::vec::Vec;

use super::coeff::Coeff;
use super::gauss::GaussRat;
use super::poly::{falling, Monomial, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct DiffOp {
    generator: Poly,
    targets: Vec<usize>,
    scale: Coeff,
}

impl DiffOp {
    /// The Fourier substitution `σ → −i∂`, pairing generator variable `k`
    /// with target variable `targets[k]`.
    pub fn fourier(generator: Poly, targets: Vec<usize>) -> Self {
        DiffOp::with_scale(generator, targets, Coeff::from_gauss(-GaussRat::i()))
    }

    /// Substitution `σ → scale·∂`.
    pub fn with_scale(generator: Poly, targets: Vec<usize>, scale: Coeff) -> Self {
        assert_eq!(generator.nvars(), targets.len(), "one target per generator variable");
        DiffOp {
            generator,
            targets,
            scale,
        }
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    /// One application of the operator.
    pub fn apply(&self, target: &Poly) -> Result<Poly> {
        if let Some(&bad) = self.targets.iter().find(|&&t| t >= target.nvars()) {
            return Err(Error::UnknownVariable(alloc::format!("#{bad}")));
        }
        let nt = target.nvars();
        // Per generator term: summed derivative orders on target variables
        // and the coefficient including scale^degree.
        let ops: Vec<(Vec<u32>, Coeff)> = self
            .generator
            .terms()
            .map(|(m, c)| {
                let mut orders = vec![0u32; nt];
                for (k, &e) in m.exponents().iter().enumerate() {
                    orders[self.targets[k]] += e;
                }
                (orders, c * &self.scale.pow(m.degree()))
            })
            .collect();
        let mut out = Poly::zero(target.space());
        for (m, c) in target.terms() {
            'ops: for (orders, oc) in &ops {
                let mut exps = m.exponents().to_vec();
                let mut factor = 1i64;
                for (v, &o) in orders.iter().enumerate() {
                    if o == 0 {
                        continue;
                    }
                    if exps[v] < o {
                        continue 'ops;
                    }
                    factor *= falling(exps[v], o);
                    exps[v] -= o;
                }
                out.add_term(Monomial::from_exponents(exps), &(c * oc) * &Coeff::from_int(factor));
            }
        }
        Ok(out)
    }

    /// `Σ_k D^k(target)/k!`. Terminates because a generator without
    /// constant term strictly lowers total degree.
    pub fn apply_exp(&self, target: &Poly) -> Result<Poly> {
        if !self.generator.constant_term().is_zero() {
            return Err(Error::ConstantTerm);
        }
        let mut result = target.clone();
        let mut term = target.clone();
        let mut k = 0i64;
        loop {
            k += 1;
            term = self.apply(&term)?.scale(&Coeff::from_frac(1, k));
            if term.is_zero() {
                return Ok(result);
            }
            result = &result + &term;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Space;

    fn setup() -> (alloc::sync::Arc<crate::algebra::poly::Space>, Poly, Poly, DiffOp) {
        let z = Space::new(["q1", "p1"]);
        let sigma = Space::new(["u1", "u2"]);
        // χ = μ·u1·u2  ⇒  χ(−i∂) = −μ ∂_q ∂_p
        let chi = Poly::from_terms(&sigma, [(vec![1, 1], Coeff::mu())]);
        let q = Poly::var(&z, 0);
        let p = Poly::var(&z, 1);
        (z, q, p, DiffOp::fourier(chi, vec![0, 1]))
    }

    #[test]
    fn zero_generator_is_identity() {
        let (z, q, p, _) = setup();
        let d = DiffOp::fourier(Poly::zero(&Space::new(["u1", "u2"])), vec![0, 1]);
        let f = &q * &p;
        assert_eq!(d.apply_exp(&f).unwrap(), f);
        let _ = z;
    }

    #[test]
    fn one_term_series() {
        let (z, q, p, d) = setup();
        let got = d.apply_exp(&(&q * &p)).unwrap();
        let expect = &(&q * &p) - &Poly::constant(&z, Coeff::mu());
        assert_eq!(got, expect);
    }

    #[test]
    fn second_order_series() {
        let (z, q, p, d) = setup();
        let qp = &q * &p;
        let got = d.apply_exp(&(&qp * &qp)).unwrap();
        let expect = &(&(&qp * &qp) - &qp.scale(&Coeff::from_int(4)).scale(&Coeff::mu()))
            + &Poly::constant(&z, Coeff::mu_pow(2).scale(&GaussRat::from_int(2)));
        assert_eq!(got, expect);
    }

    #[test]
    fn constant_generator_rejected() {
        let (_, q, _, _) = setup();
        let sigma = Space::new(["u1", "u2"]);
        let d = DiffOp::fourier(Poly::one(&sigma), vec![0, 1]);
        assert!(matches!(d.apply_exp(&q), Err(Error::ConstantTerm)));
    }
}
