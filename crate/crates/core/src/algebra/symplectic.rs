//! Darboux decomposition of an antisymmetric bilinear form over ℚ(i)(μ).

use alloc::vec::Vec;

use super::coeff::Coeff;
use super::matrix::Matrix;

/// Result of symplectic Gram–Schmidt on `B(x, y) = xᵀ·M·y`.
///
/// `basis` holds the conjugate vectors `e_1..e_r`, then `f_1..f_r`, then the
/// kernel vectors, as columns. In that basis the form reads
/// `[[0, Λ], [−Λ, 0]] ⊕ 0` with `Λ = diag(pairings)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Darboux {
    pub basis: Matrix,
    pub pairings: Vec<Coeff>,
    pub kernel: Vec<Vec<Coeff>>,
}

impl Darboux {
    /// Number of conjugate pairs times two.
    pub fn rank(&self) -> usize {
        2 * self.pairings.len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.kernel.is_empty()
    }

    /// True iff every pairing value is the same field element.
    pub fn uniform_pairing(&self) -> bool {
        self.pairings.windows(2).all(|w| w[0] == w[1])
    }

    /// `basisᵀ·M·basis`, which must equal the block-canonical form.
    pub fn canonical_form(&self, m: &Matrix) -> Matrix {
        self.basis.transpose().mul(m).mul(&self.basis)
    }

    /// The block-canonical matrix predicted by `pairings`.
    pub fn expected_form(&self) -> Matrix {
        let dim = self.basis.cols();
        let r = self.pairings.len();
        let mut out = Matrix::zeros(dim, dim);
        for (k, l) in self.pairings.iter().enumerate() {
            out.set(k, r + k, l.clone());
            out.set(r + k, k, -l);
        }
        out
    }
}

fn unit(dim: usize, k: usize) -> Vec<Coeff> {
    let mut v = alloc::vec![Coeff::zero(); dim];
    v[k] = Coeff::one();
    v
}

fn axpy(y: &[Coeff], a: &Coeff, x: &[Coeff]) -> Vec<Coeff> {
    y.iter().zip(x).map(|(yi, xi)| yi + &(a * xi)).collect()
}

/// Symplectic Gram–Schmidt with lowest-index pivoting: at each step the
/// first remaining vector with a nonzero pairing is taken as `e`, its
/// lowest-index partner as `f`, and the rest are projected off both.
pub fn darboux(m: &Matrix) -> Darboux {
    assert!(m.is_antisymmetric(), "darboux requires an antisymmetric matrix");
    let dim = m.rows();
    let mut work: Vec<Vec<Coeff>> = (0..dim).map(|k| unit(dim, k)).collect();
    let mut es = Vec::new();
    let mut fs = Vec::new();
    let mut pairings = Vec::new();
    loop {
        let mut found = None;
        'search: for i in 0..work.len() {
            for j in (i + 1)..work.len() {
                let l = m.bilinear(&work[i], &work[j]);
                if !l.is_zero() {
                    found = Some((i, j, l));
                    break 'search;
                }
            }
        }
        let Some((i, j, lambda)) = found else { break };
        let f = work.remove(j);
        let e = work.remove(i);
        let inv = lambda.inv().expect("nonzero pairing");
        work = work
            .into_iter()
            .map(|w| {
                // w' = w − (B(w,f)/λ)·e + (B(w,e)/λ)·f
                let a = -&(&m.bilinear(&w, &f) * &inv);
                let b = &m.bilinear(&w, &e) * &inv;
                axpy(&axpy(&w, &a, &e), &b, &f)
            })
            .collect();
        es.push(e);
        fs.push(f);
        pairings.push(lambda);
    }
    let mut cols = es;
    cols.extend(fs);
    cols.extend(work.iter().cloned());
    Darboux {
        basis: Matrix::from_columns(&cols, dim),
        pairings,
        kernel: work,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moyal_form_has_single_pairing_mu() {
        let m = Matrix::canonical_symplectic(1).scale(&Coeff::mu());
        let d = darboux(&m);
        assert_eq!(d.pairings, alloc::vec![Coeff::mu()]);
        assert!(d.kernel.is_empty());
        assert_eq!(d.canonical_form(&m), d.expected_form());
    }

    #[test]
    fn degenerate_form_reports_kernel() {
        let mut m = Matrix::zeros(4, 4);
        m.set(0, 1, Coeff::mu());
        m.set(1, 0, -Coeff::mu());
        let d = darboux(&m);
        assert_eq!(d.rank(), 2);
        assert_eq!(d.kernel, alloc::vec![unit(4, 2), unit(4, 3)]);
        assert_eq!(d.canonical_form(&m), d.expected_form());
    }

    #[test]
    fn mixed_form_is_put_in_block_form() {
        let rows = [[0, 2, 1, -1], [-2, 0, 3, 0], [-1, -3, 0, 5], [1, 0, -5, 0]];
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Coeff::from_int(v)).collect()).collect());
        let d = darboux(&m);
        assert_eq!(d.rank(), m.rank());
        assert_eq!(d.canonical_form(&m), d.expected_form());
    }
}
