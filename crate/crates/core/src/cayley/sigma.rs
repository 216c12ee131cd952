//! Central invariants `sigma_k` as traces of antisymmetrizer-sandwiched
//! generator strings, and their behaviour under the shift `l = lb - h`.

use crate::error::{Error, Result};
use crate::hecke::HeckeSymmetry;
use crate::nc::{generator_matrix, NCPoly, Word};
use crate::scalar::qcomb::q_binomial;
use crate::scalar::{vars, Scalar};
use crate::tensor::TensorOp;

use super::coeffs::{omega, ShiftReading};
use super::MatrixPoly;

/// `L_1 R_1 R_2 ... R_{k-1}` on `p` legs with generator entries in leg 1.
pub fn generator_string(h: &HeckeSymmetry, p: usize, k: usize) -> Result<MatrixPoly> {
    let n = h.n();
    let mut op = generator_matrix(n).pad(0, p - 1);
    for i in 1..k {
        let ri: MatrixPoly = h.matrix().embed(i, p)?.lift();
        op = op.compose(&ri)?;
    }
    Ok(op)
}

/// `q^{-k(p-k)} [p choose k]_q`.
pub fn sigma_normalization(h: &HeckeSymmetry, k: usize) -> Result<Scalar> {
    let p = h.rank() as i64;
    let k = k as i64;
    let b = vars::lookup("q").expect("q is built in");
    let mut at_q = crate::scalar::Bindings::new();
    at_q.bind_index(b, h.q().clone());
    let alpha = Scalar::q().pow((-k * (p - k)) as i32)? * q_binomial(p, k)?;
    alpha.substitute(&at_q)
}

fn sigma_with(h: &HeckeSymmetry, top: &TensorOp, k: usize) -> Result<NCPoly> {
    let p = h.rank();
    if k == 0 {
        return Ok(NCPoly::one());
    }
    if k > p {
        return Err(Error::OutOfRange(format!("sigma_{k} with rank {p}")));
    }
    let string = generator_string(h, p, k)?;
    let mut power = string.clone();
    for _ in 1..k {
        power = power.compose(&string)?;
    }
    let sandwiched = top.lift::<NCPoly>().compose(&power)?;
    Ok(sandwiched.trace().scale(&sigma_normalization(h, k)?))
}

/// `alpha_k Tr_{1..p} P(p) (L_1 R_1 ... R_{k-1})^k`; `sigma_0 = 1`.
pub fn sigma(h: &HeckeSymmetry, k: usize) -> Result<NCPoly> {
    let top = h.antisymmetrizer(h.rank())?;
    sigma_with(h, &top, k)
}

/// `sigma_0, ..., sigma_p`.
pub fn sigmas(h: &HeckeSymmetry) -> Result<Vec<NCPoly>> {
    let top = h.antisymmetrizer(h.rank())?;
    (0..=h.rank()).map(|k| sigma_with(h, &top, k)).collect()
}

/// Replace `g^i_j` by `g^i_j - shift δ^i_j`.
pub fn shift_generators(p: &NCPoly, shift: &Scalar) -> NCPoly {
    p.substitute_generators(|g| {
        let base = NCPoly::word(Word::from_slice(&[g]));
        if g.row() == g.col() {
            base.sub(&NCPoly::constant(shift.clone()))
        } else {
            base
        }
    })
}

fn shift_var() -> Scalar {
    Scalar::var_index(vars::builtin("h"))
}

/// `sigma_k` with `l = lb - h δ` substituted and expanded.
pub fn sigma_shift_direct(sigmas: &[NCPoly], k: usize) -> Result<NCPoly> {
    let s = sigmas
        .get(k)
        .ok_or_else(|| Error::OutOfRange(format!("sigma_{k}")))?;
    Ok(shift_generators(s, &shift_var()))
}

/// `sum_r (-h)^r c(p,k,r) sigma_{k-r}(Lbar)` for the chosen coefficient reading.
pub fn sigma_shift_transform(sigmas: &[NCPoly], k: usize, reading: ShiftReading) -> Result<NCPoly> {
    let p = sigmas.len() - 1;
    if k > p {
        return Err(Error::OutOfRange(format!("sigma_{k} with rank {p}")));
    }
    let minus_h = shift_var().neg();
    let mut acc = NCPoly::zero();
    for r in 0..=k {
        let c = minus_h.pow(r as i32)? * reading.coefficient(p, k, r)?;
        acc = acc.add(&sigmas[k - r].scale(&c));
    }
    Ok(acc)
}

/// `sigma^{(hbar)}_m = sigma_m + sum_{r=1}^{m} hbar^r omega(p, r+p-m, p-m) sigma_{m-r}`.
pub fn sigma_hbar(sigmas: &[NCPoly], m: usize) -> Result<NCPoly> {
    let p = sigmas.len() - 1;
    if m > p {
        return Err(Error::OutOfRange(format!(
            "sigma_hbar index {m} with rank {p}"
        )));
    }
    let k = p - m;
    let hbar = Scalar::hbar();
    let mut acc = sigmas[m].clone();
    for r in 1..=m {
        let c = hbar.pow(r as i32)? * omega(p, r + k, k)?;
        acc = acc.add(&sigmas[m - r].scale(&c));
    }
    Ok(acc)
}
