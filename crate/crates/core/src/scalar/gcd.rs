//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive primitive PRS: pick a main variable shared by both inputs, split
//! off contents (gcd of coefficients, computed recursively in fewer
//! variables), then run pseudo-remainder sequences on the primitive parts.
//! Monomial factors and univariate inputs take direct routes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let gm = ma.gcd(&mb);
    let a1 = if ma.is_one() {
        a.clone()
    } else {
        a.div_monomial(&ma)
    };
    let b1 = if mb.is_one() {
        b.clone()
    } else {
        b.div_monomial(&mb)
    };
    let g = gcd_no_monomial(&a1, &b1);
    if gm.is_one() {
        g.monic()
    } else {
        g.mul_monomial(&gm).monic()
    }
}

pub fn gcd_list<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Poly {
    let mut g = Poly::zero();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// gcd of two polynomials without monomial factors; defined up to a unit.
fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.monic() == b.monic() {
        return a.clone();
    }
    let va = a.variables();
    let vb = b.variables();
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        let content = gcd_list(a.coeffs_in(v).iter());
        return gcd(&content, b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        let content = gcd_list(b.coeffs_in(v).iter());
        return gcd(a, &content);
    }
    if va.len() == 1 {
        return univariate_gcd(a, b, va[0]);
    }
    let v = *va
        .iter()
        .min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v)))
        .unwrap();
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let cont_a = gcd_list(ca.iter());
    let cont_b = gcd_list(cb.iter());
    let content = gcd(&cont_a, &cont_b);
    let pa = divide_all(&ca, &cont_a);
    let pb = divide_all(&cb, &cont_b);
    let (f, g) = if pa.len() >= pb.len() {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let last = subresultant_last(f, g);
    let f = primitive(last);
    Poly::from_coeffs_in(v, &f).mul(&content)
}

/// Last nonzero member of the subresultant remainder sequence of `f` and
/// `g` (`deg f >= deg g`, both nonzero).
fn subresultant_last(mut f: Vec<Poly>, mut g: Vec<Poly>) -> Vec<Poly> {
    let mut delta = f.len() - g.len();
    let mut beta = if delta % 2 == 0 { Poly::integer(-1) } else { Poly::one() };
    let mut psi = Poly::integer(-1);
    loop {
        let r = pseudo_remainder(&f, &g);
        if r.is_empty() {
            return g;
        }
        let r: Vec<Poly> = r
            .iter()
            .map(|c| c.div_exact(&beta).expect("subresultant division is exact"))
            .collect();
        if r.len() == 1 {
            return r;
        }
        let gamma = g.last().expect("nonzero").clone();
        // psi <- (-gamma)^delta / psi^(delta - 1)
        let minus_gamma = gamma.neg();
        psi = if delta == 0 {
            psi.clone()
        } else {
            minus_gamma
                .pow(delta as u32)
                .div_exact(&psi.pow(delta as u32 - 1))
                .expect("subresultant division is exact")
        };
        f = g;
        g = r;
        delta = f.len() - g.len();
        beta = minus_gamma.mul(&psi.pow(delta as u32));
    }
}

fn divide_all(coeffs: &[Poly], d: &Poly) -> Vec<Poly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn primitive(mut coeffs: Vec<Poly>) -> Vec<Poly> {
    trim(&mut coeffs);
    if coeffs.is_empty() {
        return coeffs;
    }
    let content = gcd_list(coeffs.iter());
    if !content.is_one() {
        coeffs = divide_all(&coeffs, &content);
    }
    integer_primitive(coeffs)
}

/// Scale to integer coefficients with no common integer factor.
fn integer_primitive(coeffs: Vec<Poly>) -> Vec<Poly> {
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for c in &coeffs {
        for (_, r) in c.terms() {
            den_lcm = den_lcm.lcm(r.denom());
            num_gcd = num_gcd.gcd(r.numer());
        }
    }
    if num_gcd.is_zero() || (den_lcm.is_one() && num_gcd.is_one()) {
        return coeffs;
    }
    let factor = BigRational::new(den_lcm, num_gcd);
    coeffs.iter().map(|c| c.scale(&factor)).collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b` of univariate
/// polynomials with polynomial coefficients (index = power of the main
/// variable).
fn pseudo_remainder(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    let mut steps = (a.len() + 1).saturating_sub(b.len());
    while r.len() > db {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        for (i, bc) in b.iter().enumerate() {
            let idx = i + dr - db;
            r[idx] = r[idx].sub(&lcr.mul(bc));
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 && !r.is_empty() {
        let factor = lcb.pow(steps as u32);
        for c in r.iter_mut() {
            *c = c.mul(&factor);
        }
    }
    r
}

fn univariate_gcd(a: &Poly, b: &Poly, v: usize) -> Poly {
    let to_dense = |p: &Poly| -> Vec<BigRational> {
        p.coeffs_in(v)
            .into_iter()
            .map(|c| c.constant_value().expect("univariate"))
            .collect()
    };
    let mut f = to_dense(a);
    let mut g = to_dense(b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = dense_rem(&f, &g);
        f = g;
        g = r;
    }
    let coeffs: Vec<Poly> = f.into_iter().map(Poly::constant).collect();
    Poly::from_coeffs_in(v, &coeffs)
}

fn dense_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].recip();
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = &r[dr] * &inv;
        for (i, bc) in b.iter().enumerate() {
            let t = &factor * bc;
            r[i + dr - db] -= t;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}
