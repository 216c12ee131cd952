//! Classical invariants `tau_k` from Levi-Civita contractions.

use crate::error::{Error, Result};
use crate::nc::NCPoly;
use crate::scalar::qcomb::{binomial, factorial};
use crate::scalar::Scalar;

use super::coeffs::rho;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for perm in permutations(n - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

fn sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `C(n,k)/n! eps_{i_1..i_k a..} A^{i_1}_{j_1} ... A^{i_k}_{j_k} eps^{j_1..j_k a..}`,
/// keeping the product order of the entries.
pub fn tau(n: usize, k: usize) -> Result<NCPoly> {
    if k > n {
        return Err(Error::OutOfRange(format!("tau_{k} for n = {n}")));
    }
    if k == 0 {
        return Ok(NCPoly::one());
    }
    let perms = permutations(n);
    let mut acc = NCPoly::zero();
    for upper in &perms {
        for lower in &perms {
            if upper[k..] != lower[k..] {
                continue;
            }
            let mut term = NCPoly::constant(Scalar::integer(sign(upper) * sign(lower)));
            for m in 0..k {
                term = term.mul(&NCPoly::generator(upper[m], lower[m]));
            }
            acc.add_assign_poly(&term);
        }
    }
    let norm = Scalar::from_bigint(binomial(n as i64, k as i64))
        / Scalar::from_bigint(factorial(n as i64));
    Ok(acc.scale(&norm))
}

pub fn taus(n: usize) -> Result<Vec<NCPoly>> {
    (0..=n).map(|k| tau(n, k)).collect()
}

/// `tau^{(hbar)}_m = tau_m + sum_{s=1}^{m} hbar^s rho(p, s+p-m, p-m) tau_{m-s}`.
pub fn tau_hbar(taus: &[NCPoly], m: usize) -> Result<NCPoly> {
    let p = taus.len() - 1;
    if m > p {
        return Err(Error::OutOfRange(format!(
            "tau_hbar index {m} with p = {p}"
        )));
    }
    let k = p - m;
    let hbar = Scalar::hbar();
    let mut acc = taus[m].clone();
    for s in 1..=m {
        let c = hbar.pow(s as i32)? * rho(p, s + k, k)?;
        acc = acc.add(&taus[m - s].scale(&c));
    }
    Ok(acc)
}

/// `det A + sum_{k=1}^{p-1} hbar^k rho(p,k,0) tau_{p-k}`, with `det A = tau_p`.
pub fn nc_determinant(taus: &[NCPoly]) -> Result<NCPoly> {
    let p = taus.len() - 1;
    let hbar = Scalar::hbar();
    let mut acc = taus[p].clone();
    for k in 1..p {
        let c = hbar.pow(k as i32)? * rho(p, k, 0)?;
        acc = acc.add(&taus[p - k].scale(&c));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nc::{relations_ugl, RewriteSystem};
    use crate::scalar::Bindings;

    fn a(i: usize, j: usize) -> NCPoly {
        NCPoly::generator(i, j)
    }

    #[test]
    fn trace_for_n2() {
        assert_eq!(tau(2, 1).unwrap(), a(0, 0).add(&a(1, 1)));
    }

    #[test]
    fn top_tau_is_determinant_when_commuting() {
        let rs = RewriteSystem::complete(
            &relations_ugl(3)
                .iter()
                .map(|r| {
                    r.substitute(&Bindings::new().with("hbar", Scalar::zero()))
                        .unwrap()
                })
                .collect::<Vec<_>>(),
            3,
        )
        .unwrap();
        // cofactor expansion along the first row, entries in row order
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            a(r1, c1).mul(&a(r2, c2)).sub(&a(r1, c2).mul(&a(r2, c1)))
        };
        let det = a(0, 0)
            .mul(&minor(1, 2, 1, 2))
            .sub(&a(0, 1).mul(&minor(1, 2, 0, 2)))
            .add(&a(0, 2).mul(&minor(1, 2, 0, 1)));
        let diff = tau(3, 3).unwrap().sub(&det);
        assert!(rs.normal_form(&diff).unwrap().is_zero());
        // tau_2 is the sum of principal 2x2 minors
        let minors = minor(0, 1, 0, 1)
            .add(&minor(0, 2, 0, 2))
            .add(&minor(1, 2, 1, 2));
        assert!(rs
            .normal_form(&tau(3, 2).unwrap().sub(&minors))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn tau_is_central_in_ugl2() {
        let rs = RewriteSystem::complete(&relations_ugl(2), 4).unwrap();
        for k in 0..=2 {
            let t = tau(2, k).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert!(rs.commutes_mod(&t, &a(i, j)).unwrap(), "k={k}");
                }
            }
        }
    }

    #[test]
    fn tau_hbar_for_p2() {
        let t = taus(2).unwrap();
        // rho(2,2,1) = 1, so tau^(hbar)_1 = tau_1 + hbar
        let expected = t[1].add(&NCPoly::constant(Scalar::hbar()));
        assert_eq!(tau_hbar(&t, 1).unwrap(), expected);
        assert_eq!(tau_hbar(&t, 0).unwrap(), NCPoly::one());
    }
}
