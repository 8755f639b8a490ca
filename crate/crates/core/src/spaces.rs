//! Standard variable spaces.
//!
//! Phase space is `z = (q1..qn, p1..pn)`. Frequency (σ) space uses slot
//! letters: `u1..u2n` for σ, `v1..v2n` for σ′ and `w1..w2n` for σ″, with the
//! first `n` components of each slot dual to `q` and the last `n` dual to `p`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{Poly, Space};
use crate::error::{Error, Result};

pub const SLOT_LETTERS: [char; 3] = ['u', 'v', 'w'];

pub fn phase_names(n: usize) -> Vec<String> {
    (1..=n)
        .map(|k| format!("q{k}"))
        .chain((1..=n).map(|k| format!("p{k}")))
        .collect()
}

pub fn slot_names(n: usize, slots: usize) -> Vec<String> {
    SLOT_LETTERS[..slots]
        .iter()
        .flat_map(|l| (1..=2 * n).map(move |k| format!("{l}{k}")))
        .collect()
}

pub fn phase_space(n: usize, max_degree: u32) -> Arc<Space> {
    Space::with_max_degree(phase_names(n), max_degree)
}

/// `u1..u2n`: the space of χ and other single-slot functions of σ.
pub fn sigma_space(n: usize, max_degree: u32) -> Arc<Space> {
    slot_space(n, 1, max_degree)
}

/// `slots` consecutive copies of σ-space: 2 for kernels, 3 for the
/// associativity and Jacobi identities.
pub fn slot_space(n: usize, slots: usize, max_degree: u32) -> Arc<Space> {
    Space::with_max_degree(slot_names(n, slots), max_degree)
}

pub(crate) fn expect_names(p: &Poly, names: &[String]) -> Result<()> {
    if p.space().names() == names {
        Ok(())
    } else {
        Err(Error::SpaceMismatch {
            left: p.space().describe(),
            right: {
                let mut s = String::from("[");
                s.push_str(&names.join(", "));
                s.push(']');
                s
            },
        })
    }
}

/// Infer `n` from a single-slot σ polynomial.
pub(crate) fn sigma_dimension(p: &Poly) -> Result<usize> {
    let v = p.nvars();
    if v % 2 != 0 || v == 0 {
        return Err(Error::SpaceMismatch {
            left: p.space().describe(),
            right: String::from("[u1..u2n]"),
        });
    }
    let n = v / 2;
    expect_names(p, &slot_names(n, 1))?;
    Ok(n)
}

/// Infer `n` from a two-slot kernel polynomial.
pub(crate) fn kernel_dimension(p: &Poly) -> Result<usize> {
    let v = p.nvars();
    if v % 4 != 0 || v == 0 {
        return Err(Error::SpaceMismatch {
            left: p.space().describe(),
            right: String::from("[u1..u2n, v1..v2n]"),
        });
    }
    let n = v / 4;
    expect_names(p, &slot_names(n, 2))?;
    Ok(n)
}

/// Embed a σ-space polynomial into slot `slot` of `target`.
pub(crate) fn into_slot(chi: &Poly, target: &Arc<Space>, slot: usize) -> Poly {
    let d = chi.nvars();
    let map: Vec<usize> = (0..d).map(|k| slot * d + k).collect();
    chi.reindex(target, &map)
}

/// `χ(σ_a + σ_b + …)` for the listed slots of `target`.
pub(crate) fn at_slot_sum(chi: &Poly, target: &Arc<Space>, slots: &[usize]) -> Poly {
    let d = chi.nvars();
    let images: Vec<Poly> = (0..d)
        .map(|k| {
            slots
                .iter()
                .map(|s| Poly::var(target, s * d + k))
                .fold(Poly::zero(target), |acc, v| &acc + &v)
        })
        .collect();
    chi.substitute(target, &images)
}

/// The coboundary `χ(σ) + χ(σ′) − χ(σ + σ′)` on the two-slot space.
pub fn coboundary(chi: &Poly) -> Result<Poly> {
    let n = sigma_dimension(chi)?;
    let two = slot_space(n, 2, chi.space().max_degree());
    Ok(&(&into_slot(chi, &two, 0) + &into_slot(chi, &two, 1)) - &at_slot_sum(chi, &two, &[0, 1]))
}

/// `b(σ_A, σ_B)` on `target`, where `σ_A` is the sum of the slots listed in
/// `first` and `σ_B` the sum of those in `second`. `b` lives on the two-slot
/// space.
pub(crate) fn kernel_at(b: &Poly, target: &Arc<Space>, first: &[usize], second: &[usize]) -> Poly {
    let d = b.nvars() / 2;
    let sum = |slots: &[usize], k: usize| {
        slots
            .iter()
            .map(|s| Poly::var(target, s * d + k))
            .fold(Poly::zero(target), |acc, v| &acc + &v)
    };
    let images: Vec<Poly> = (0..d)
        .map(|k| sum(first, k))
        .chain((0..d).map(|k| sum(second, k)))
        .collect();
    b.substitute(target, &images)
}

/// Swap the two slots of a kernel: `b(σ′, σ)`.
pub(crate) fn swap_slots(b: &Poly) -> Poly {
    let d = b.nvars() / 2;
    let map: Vec<usize> = (0..d).map(|k| d + k).chain(0..d).collect();
    b.reindex(b.space(), &map)
}

/// The bilinear form `σ′ᵀ·M·σ = Σ M_ij v_i u_j` on the two-slot space.
pub(crate) fn bilinear_vu(m: &crate::algebra::Matrix, two: &Arc<Space>) -> Poly {
    let d = m.rows();
    let mut out = Poly::zero(two);
    for i in 0..d {
        for j in 0..d {
            let c = m.get(i, j);
            if !c.is_zero() {
                out = &out + &(&Poly::var(two, d + i) * &Poly::var(two, j)).scale(c);
            }
        }
    }
    out
}
