//! Assembly and reduction of the Cayley-Hamilton identities.

use rayon::prelude::*;
use serde::Serialize;

use super::sigma::{sigma_hbar, sigmas};
use super::tau::{tau_hbar, taus};
use super::MatrixPoly;
use crate::error::Result;
use crate::hecke::HeckeSymmetry;
use crate::nc::{
    generator_matrix, relations_re, relations_reqh, relations_ugl, Algebra, NCPoly, RewriteSystem,
};

/// Reading of the summation range in `(-L)^p + sum_k (-L)^k c_{p-k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// `k = 0 .. p-1`.
    #[serde(rename = "k=0..p-1")]
    Verbatim,
    /// `k = 1 .. p`, the `k = p` term carrying `c_0 = 1`.
    #[serde(rename = "k=1..p")]
    FromOne,
    /// `k = 1 .. p-1`, without a free term.
    #[serde(rename = "k=1..p-1")]
    FromOneNoFree,
}

impl Convention {
    /// Order in which readings are tried.
    pub const ALL: [Convention; 3] = [
        Convention::Verbatim,
        Convention::FromOne,
        Convention::FromOneNoFree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Verbatim => "k=0..p-1",
            Convention::FromOne => "k=1..p",
            Convention::FromOneNoFree => "k=1..p-1",
        }
    }

    fn range(self, p: usize) -> std::ops::Range<usize> {
        match self {
            Convention::Verbatim => 0..p,
            Convention::FromOne => 1..p + 1,
            Convention::FromOneNoFree => 1..p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualEntry {
    /// 1-based.
    pub row: usize,
    /// 1-based.
    pub col: usize,
    pub value: String,
}

/// Outcome of reducing a matrix identity modulo a rewriting system.
#[derive(Clone, Debug, Serialize)]
pub struct CHReport {
    pub identity: String,
    pub n: usize,
    pub p: usize,
    pub status: String,
    pub convention: String,
    pub residual_nonzero_entries: Vec<ResidualEntry>,
    pub coefficients: Vec<String>,
    #[serde(skip)]
    pub residual: MatrixPoly,
}

impl CHReport {
    pub fn new(
        identity: impl Into<String>,
        p: usize,
        convention: impl Into<String>,
        residual: MatrixPoly,
        coefficients: Vec<String>,
        prefix: &str,
    ) -> Self {
        let dim = residual.dim();
        let mut nonzero = Vec::new();
        for row in 0..dim {
            for col in 0..dim {
                let e = residual.get(row, col);
                if !e.is_zero() {
                    nonzero.push(ResidualEntry {
                        row: row + 1,
                        col: col + 1,
                        value: e.display_with(prefix),
                    });
                }
            }
        }
        CHReport {
            identity: identity.into(),
            n: residual.n(),
            p,
            status: if nonzero.is_empty() { "pass" } else { "fail" }.into(),
            convention: convention.into(),
            residual_nonzero_entries: nonzero,
            coefficients,
            residual,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

fn times_central(m: &MatrixPoly, c: &NCPoly) -> MatrixPoly {
    m.map(|e| e.mul(c))
}

/// `(-L)^p + sum_k (-L)^k c_{p-k}` over the range of `convention`, where
/// `coeffs[m] = c_m` for `m = 0..=p`.
pub fn assemble_ch(
    l: &MatrixPoly,
    coeffs: &[NCPoly],
    convention: Convention,
) -> Result<MatrixPoly> {
    let p = coeffs.len() - 1;
    let minus_l = l.neg();
    let mut powers = vec![MatrixPoly::identity(l.n(), l.legs())];
    for k in 1..=p {
        powers.push(powers[k - 1].compose(&minus_l)?);
    }
    let mut acc = powers[p].clone();
    for k in convention.range(p) {
        acc = acc.add(&times_central(&powers[k], &coeffs[p - k]))?;
    }
    Ok(acc)
}

/// Entrywise normal form.
pub fn reduce_matrix(rs: &RewriteSystem, m: &MatrixPoly) -> Result<MatrixPoly> {
    let entries = m
        .entries()
        .par_iter()
        .map(|e| rs.normal_form(e))
        .collect::<Result<Vec<_>>>()?;
    MatrixPoly::from_entries(m.n(), m.legs(), entries)
}

/// Reduce the identity under each convention in turn, stopping at the first
/// zero residual; a failure reports the verbatim residual.
pub fn verify_identity(
    identity: &str,
    rs: &RewriteSystem,
    l: &MatrixPoly,
    coeffs: &[NCPoly],
    prefix: &str,
) -> Result<CHReport> {
    let p = coeffs.len() - 1;
    let printed: Vec<String> = coeffs.iter().map(|c| c.display_with(prefix)).collect();
    let mut first = None;
    for convention in Convention::ALL {
        let residual = reduce_matrix(rs, &assemble_ch(l, coeffs, convention)?)?;
        let report = CHReport::new(
            identity,
            p,
            convention.as_str(),
            residual,
            printed.clone(),
            prefix,
        );
        if report.passed() {
            return Ok(report);
        }
        first.get_or_insert(report);
    }
    Ok(first.expect("at least one convention"))
}

/// `sigma^{(hbar)}_m` for `m = 0..=p`.
pub fn qh_coefficients(h: &HeckeSymmetry) -> Result<Vec<NCPoly>> {
    let s = sigmas(h)?;
    (0..s.len()).map(|m| sigma_hbar(&s, m)).collect()
}

/// `tau^{(hbar)}_m` for `m = 0..=n`.
pub fn ugl_coefficients(n: usize) -> Result<Vec<NCPoly>> {
    let t = taus(n)?;
    (0..=n).map(|m| tau_hbar(&t, m)).collect()
}

/// Cayley-Hamilton identity of the reflection equation algebra with
/// coefficients `sigma_k(L)`.
pub fn verify_ch_re(h: &HeckeSymmetry, degree_bound: usize) -> Result<CHReport> {
    let rs = RewriteSystem::complete(&relations_re(h)?, degree_bound)?;
    verify_identity(
        "RE",
        &rs,
        &generator_matrix(h.n()),
        &sigmas(h)?,
        Algebra::RE.prefix(),
    )
}

/// Two-parameter identity with coefficients `sigma^{(hbar)}_k(Lbar)`.
pub fn verify_ch_qh(h: &HeckeSymmetry, degree_bound: usize) -> Result<CHReport> {
    let rs = RewriteSystem::complete(&relations_reqh(h)?, degree_bound)?;
    verify_identity(
        "REqh",
        &rs,
        &generator_matrix(h.n()),
        &qh_coefficients(h)?,
        Algebra::REqh.prefix(),
    )
}

/// Enveloping-algebra identity with coefficients `tau^{(hbar)}_k(A)`.
pub fn verify_ch_ugl(n: usize, degree_bound: usize) -> Result<CHReport> {
    let rs = RewriteSystem::complete(&relations_ugl(n), degree_bound)?;
    verify_identity(
        "Ugl",
        &rs,
        &generator_matrix(n),
        &ugl_coefficients(n)?,
        Algebra::Ugl.prefix(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::tensor::TensorOp;

    #[test]
    fn re_n2() {
        let h = HeckeSymmetry::standard(2).unwrap();
        let report = verify_ch_re(&h, 4).unwrap();
        assert!(report.passed(), "{:?}", report.residual_nonzero_entries);
        assert_eq!(report.convention, "k=0..p-1");
    }

    #[test]
    fn classical_n2() {
        let flip = HeckeSymmetry::new(TensorOp::flip(2), Scalar::zero()).unwrap();
        assert!(verify_ch_re(&flip, 4).unwrap().passed());
    }

    #[test]
    fn qh_n2() {
        let h = HeckeSymmetry::standard(2).unwrap();
        let report = verify_ch_qh(&h, 4).unwrap();
        assert!(report.passed(), "{:?}", report.residual_nonzero_entries);
    }

    #[test]
    fn ugl_n2() {
        let report = verify_ch_ugl(2, 4).unwrap();
        assert!(report.passed(), "{:?}", report.residual_nonzero_entries);
    }

    #[test]
    fn truncated_bound_is_an_error() {
        let h = HeckeSymmetry::standard(2).unwrap();
        assert!(verify_ch_re(&h, 1).is_err());
    }
}
