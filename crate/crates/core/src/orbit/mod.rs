//! Quantum orbits, their projector families and line bundles.

mod derived;

use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{assemble_ch, qh_coefficients, reduce_matrix, sigmas, ugl_coefficients};
use crate::cayley::{Convention, MatrixPoly};
use crate::error::{Error, Result};
use crate::hecke::HeckeSymmetry;
use crate::nc::{
    generator_matrix, relations_re, relations_reqh, relations_ugl, Algebra, NCPoly, RewriteSystem,
};
use crate::scalar::Scalar;

pub use derived::{
    check_re_ch, check_re_pr, cubic_coefficients, l_plus, symmetrizer_plus, verify_ch_lplus,
    CubicVariant, LPlusReport,
};

/// Elementary symmetric functions `e_1(mu), ..., e_p(mu)`.
pub fn c_from_mu(mu: &[Scalar]) -> Result<Vec<Scalar>> {
    check_distinct(mu)?;
    let mut e = vec![Scalar::one()];
    for m in mu {
        let mut next = e.clone();
        next.push(Scalar::zero());
        for k in 1..next.len() {
            next[k] = &next[k] + &(&e[k - 1] * m);
        }
        e = next;
    }
    Ok(e.into_iter().skip(1).collect())
}

fn check_distinct(mu: &[Scalar]) -> Result<()> {
    for i in 0..mu.len() {
        for j in i + 1..mu.len() {
            if mu[i] == mu[j] {
                return Err(Error::RepeatedRoots(i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// Symbolic roots `m1, ..., mp`.
pub fn symbolic_mu(p: usize) -> Result<Vec<Scalar>> {
    (1..=p).map(|i| Scalar::var(&format!("m{i}"))).collect()
}

/// Quotient of a base algebra by `inv_k - c_k`, `k = 1..p`.
#[derive(Clone, Debug)]
pub struct OrbitSpec {
    algebra: Algebra,
    n: usize,
    mu: Vec<Scalar>,
    c: Vec<Scalar>,
    invariants: Vec<NCPoly>,
    quotient: RewriteSystem,
}

/// `sigma_k`, `sigma^{(hbar)}_k` or `tau^{(hbar)}_k` for `k = 0..=p`.
pub fn orbit_invariants(h: &HeckeSymmetry, algebra: Algebra) -> Result<Vec<NCPoly>> {
    match algebra {
        Algebra::RE => sigmas(h),
        Algebra::REqh => qh_coefficients(h),
        Algebra::Ugl => ugl_coefficients(h.n()),
    }
}

fn base_relations(h: &HeckeSymmetry, algebra: Algebra) -> Result<Vec<NCPoly>> {
    match algebra {
        Algebra::RE => relations_re(h),
        Algebra::REqh => relations_reqh(h),
        Algebra::Ugl => Ok(relations_ugl(h.n())),
    }
}

/// Orbit with roots `mu` and `c_k = e_k(mu)`.
pub fn make_orbit(
    h: &HeckeSymmetry,
    mu: Vec<Scalar>,
    algebra: Algebra,
    degree_bound: usize,
) -> Result<OrbitSpec> {
    let c = c_from_mu(&mu)?;
    OrbitSpec::with_values(h, mu, c, algebra, degree_bound)
}

impl OrbitSpec {
    /// Orbit fixing the invariants to `c`, which is not checked against `mu`.
    pub fn with_values(
        h: &HeckeSymmetry,
        mu: Vec<Scalar>,
        c: Vec<Scalar>,
        algebra: Algebra,
        degree_bound: usize,
    ) -> Result<OrbitSpec> {
        check_distinct(&mu)?;
        let invariants = orbit_invariants(h, algebra)?;
        let p = invariants.len() - 1;
        if mu.len() != p || c.len() != p {
            return Err(Error::ShapeMismatch(format!(
                "expected {p} roots and values, got {} and {}",
                mu.len(),
                c.len()
            )));
        }
        let mut relations = base_relations(h, algebra)?;
        for k in 1..=p {
            relations.push(invariants[k].sub(&NCPoly::constant(c[k - 1].clone())));
        }
        let quotient = RewriteSystem::complete(&relations, degree_bound)?;
        Ok(OrbitSpec {
            algebra,
            n: h.n(),
            mu,
            c,
            invariants,
            quotient,
        })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[Scalar] {
        &self.mu
    }

    pub fn c(&self) -> &[Scalar] {
        &self.c
    }

    pub fn invariants(&self) -> &[NCPoly] {
        &self.invariants
    }

    pub fn quotient(&self) -> &RewriteSystem {
        &self.quotient
    }

    pub fn generator_matrix(&self) -> MatrixPoly {
        generator_matrix(self.n)
    }

    pub fn reduce(&self, m: &MatrixPoly) -> Result<MatrixPoly> {
        reduce_matrix(&self.quotient, m)
    }

    /// `prod_i (L - mu_i id)`, unreduced.
    pub fn root_product(&self) -> Result<MatrixPoly> {
        let l = self.generator_matrix();
        let mut acc = MatrixPoly::identity(self.n, 1);
        for m in &self.mu {
            acc = acc.compose(&shifted(&l, m)?)?;
        }
        Ok(acc)
    }

    /// `(-1)^p` times the characteristic polynomial with coefficients `c`,
    /// evaluated at `L`, unreduced.
    pub fn characteristic(&self) -> Result<MatrixPoly> {
        let mut coeffs = vec![NCPoly::one()];
        coeffs.extend(self.c.iter().map(|c| NCPoly::constant(c.clone())));
        let m = assemble_ch(&self.generator_matrix(), &coeffs, Convention::Verbatim)?;
        Ok(if self.p() % 2 == 0 { m } else { m.neg() })
    }
}

fn shifted(l: &MatrixPoly, m: &Scalar) -> Result<MatrixPoly> {
    l.sub(&MatrixPoly::identity(l.n(), l.legs()).scale(m))
}

/// Coordinates of an element of the free right module `V ⊗ k(M)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeModuleElement {
    pub components: Vec<NCPoly>,
}

impl FreeModuleElement {
    pub fn basis(n: usize, j: usize) -> Self {
        let mut components = vec![NCPoly::zero(); n];
        components[j] = NCPoly::one();
        FreeModuleElement { components }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(NCPoly::is_zero)
    }

    pub fn mul_right(&self, f: &NCPoly) -> Self {
        FreeModuleElement {
            components: self.components.iter().map(|c| c.mul(f)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        FreeModuleElement {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }
}

/// `(v ◁ L)_i = sum_j v_j l^j_i`, reduced in the orbit quotient.
pub fn right_action(v: &FreeModuleElement, orbit: &OrbitSpec) -> Result<FreeModuleElement> {
    let n = orbit.n();
    if v.components.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "module element has {} components, expected {n}",
            v.components.len()
        )));
    }
    let components = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = NCPoly::zero();
            for (j, vj) in v.components.iter().enumerate() {
                acc.add_assign_poly(&vj.mul(&NCPoly::generator(j, i)));
            }
            orbit.quotient.normal_form(&acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FreeModuleElement { components })
}

/// `P_i = prod_{j != i} (L - mu_j id) / (mu_i - mu_j)` for 1-based `i`, reduced.
pub fn projector(orbit: &OrbitSpec, i: usize) -> Result<MatrixPoly> {
    let p = orbit.p();
    if i == 0 || i > p {
        return Err(Error::OutOfRange(format!("projector {i} of {p}")));
    }
    let l = orbit.generator_matrix();
    let mu_i = &orbit.mu[i - 1];
    let mut acc = MatrixPoly::identity(orbit.n, 1);
    for (j, mu_j) in orbit.mu.iter().enumerate() {
        if j + 1 == i {
            continue;
        }
        let factor = shifted(&l, mu_j)?.scale(&(mu_i - mu_j).inv()?);
        acc = acc.compose(&factor)?;
    }
    orbit.reduce(&acc)
}

/// Residual checks of the projector family modulo the orbit ideal.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectorReport {
    pub algebra: Algebra,
    pub n: usize,
    pub p: usize,
    pub mu: Vec<String>,
    pub c: Vec<String>,
    pub status: String,
    /// `(i, j)` pairs, 1-based, where `P_i P_j - delta_ij P_i` is nonzero.
    pub orthogonality_failures: Vec<[usize; 2]>,
    pub completeness: bool,
    /// 1-based indices where `(L - mu_i) P_i` is nonzero.
    pub eigen_failures: Vec<usize>,
}

impl ProjectorReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// `P_i P_j = delta_ij P_i`, `sum_i P_i = id` and `L P_i = mu_i P_i`.
pub fn verify_projector_family(orbit: &OrbitSpec) -> Result<ProjectorReport> {
    let p = orbit.p();
    let n = orbit.n;
    let projectors = (1..=p)
        .map(|i| projector(orbit, i))
        .collect::<Result<Vec<_>>>()?;
    let mut orthogonality_failures = Vec::new();
    for i in 0..p {
        for j in 0..p {
            let mut prod = projectors[i].compose(&projectors[j])?;
            if i == j {
                prod = prod.sub(&projectors[i])?;
            }
            if !orbit.reduce(&prod)?.is_zero() {
                orthogonality_failures.push([i + 1, j + 1]);
            }
        }
    }
    let mut sum = MatrixPoly::identity(n, 1).neg();
    for pr in &projectors {
        sum = sum.add(pr)?;
    }
    let completeness = orbit.reduce(&sum)?.is_zero();
    let l = orbit.generator_matrix();
    let mut eigen_failures = Vec::new();
    for (i, pr) in projectors.iter().enumerate() {
        let e = shifted(&l, &orbit.mu[i])?.compose(pr)?;
        if !orbit.reduce(&e)?.is_zero() {
            eigen_failures.push(i + 1);
        }
    }
    let ok = orthogonality_failures.is_empty() && completeness && eigen_failures.is_empty();
    Ok(ProjectorReport {
        algebra: orbit.algebra,
        n,
        p,
        mu: orbit.mu.iter().map(Scalar::to_string).collect(),
        c: orbit.c.iter().map(Scalar::to_string).collect(),
        status: if ok { "pass" } else { "fail" }.into(),
        orthogonality_failures,
        completeness,
        eigen_failures,
    })
}

/// Whether the line bundle with parameter `nu` is nontrivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum Triviality {
    Trivial,
    /// 1-based root index.
    Nontrivial(usize),
}

/// Decide triviality from `prod_i (nu - mu_i)`; a vanishing product must come
/// with a nonzero projector.
pub fn module_nontrivial(orbit: &OrbitSpec, nu: &Scalar) -> Result<Triviality> {
    let product: Scalar = orbit.mu.iter().map(|m| nu - m).product();
    if !product.is_zero() {
        return Ok(Triviality::Trivial);
    }
    let i = orbit.mu.iter().position(|m| m == nu).ok_or_else(|| {
        Error::Inconsistent(format!(
            "nu = {nu} annihilates the root product but is not a root"
        ))
    })? + 1;
    if projector(orbit, i)?.is_zero() {
        return Err(Error::Inconsistent(format!(
            "projector {i} vanishes in the orbit quotient"
        )));
    }
    Ok(Triviality::Nontrivial(i))
}
