//! Numeric coefficients relating the invariants of the shifted and unshifted
//! generator matrices.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::qcomb::{binomial, q_binomial, q_factorial, q_number};
use crate::scalar::{vars, Bindings, Poly, Scalar};

fn int(n: BigInt) -> Scalar {
    Scalar::from_bigint(n)
}

fn q_pow(e: i64) -> Scalar {
    Scalar::q().pow(e as i32).expect("q is nonzero")
}

fn check_range(p: usize, s: usize, k: usize) -> Result<()> {
    if k > s || s > p {
        return Err(Error::OutOfRange(format!(
            "coefficient index requires 0 <= k <= s <= p, got p={p} s={s} k={k}"
        )));
    }
    Ok(())
}

/// Alternating sum
/// `sum_r (-1)^r q^{-r(p-1)} C(s-r, k) C(p-s+r, r) [p choose s-r]_q`.
pub fn xi(p: usize, s: usize, k: usize) -> Result<Scalar> {
    check_range(p, s, k)?;
    let (p, s, k) = (p as i64, s as i64, k as i64);
    let mut acc = Scalar::zero();
    for r in 0..=s - k {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let ordinary = binomial(s - r, k) * binomial(p - s + r, r) * sign;
        acc = acc + int(ordinary) * q_pow(-r * (p - 1)) * q_binomial(p, s - r)?;
    }
    Ok(acc)
}

/// `xi` divided by `lambda^{s-k} [p choose s]_q`.
pub fn omega(p: usize, s: usize, k: usize) -> Result<Scalar> {
    let x = xi(p, s, k)?;
    let lambda_pow = Scalar::lambda().pow(k as i32 - s as i32)?;
    (x * lambda_pow).checked_div(&q_binomial(p as i64, s as i64)?)
}

/// Classical limit of `omega`; a pole at `q = 1` is an error.
pub fn rho(p: usize, s: usize, k: usize) -> Result<Scalar> {
    omega(p, s, k)?.substitute(&Bindings::new().with("q", Scalar::one()))
}

/// Subsets of `{1..=max}` of the given size, ascending.
fn subsets(max: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, max: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=max {
            cur.push(v);
            go(v + 1, max, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, max, size, &mut Vec::new(), &mut out);
    out
}

/// `sum q^{sum l - sum r} / (prod l_q prod r_q)` over disjoint index sets
/// `l`, `r` inside `{1..p-1}` of the given sizes.
fn v_sum(p: usize, l_size: usize, r_size: usize) -> Scalar {
    let top = p.saturating_sub(1);
    let mut acc = Scalar::zero();
    for ls in subsets(top, l_size) {
        for rs in subsets(top, r_size) {
            if ls.iter().any(|v| rs.contains(v)) {
                continue;
            }
            let exp: i64 = ls.iter().map(|&v| v as i64).sum::<i64>()
                - rs.iter().map(|&v| v as i64).sum::<i64>();
            let den: Scalar = ls
                .iter()
                .chain(rs.iter())
                .map(|&v| q_number(v as i64))
                .product();
            acc = acc + q_pow(exp) / den;
        }
    }
    acc
}

/// The closed form `lambda^{s-k} q^{(p-1)(p-2s)/2} (p-1)_q! (V_k + V_s)`.
pub fn xi_closed(p: usize, s: usize, k: usize) -> Result<Scalar> {
    check_range(p, s, k)?;
    if p == 0 {
        return Err(Error::OutOfRange("closed form needs p >= 1".into()));
    }
    let v_k = if k == 0 {
        Scalar::zero()
    } else {
        v_sum(p, k - 1, p - s)
    };
    let v_s = if s == p {
        Scalar::zero()
    } else {
        v_sum(p, k, p - s - 1)
    };
    let (pi, si) = (p as i64, s as i64);
    let q_exp = (pi - 1) * (pi - 2 * si) / 2;
    Ok(Scalar::lambda().pow((s - k) as i32)? * q_pow(q_exp) * q_factorial(pi - 1)? * (v_k + v_s))
}

/// The shift-coefficient readings compared by the two-path check: in
/// `sigma_k(L) = sum_r (-h)^r q^{-r(p-1)} c(p,k,r) sigma_{k-r}(Lbar)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftReading {
    /// `C(p,k) [k choose r]_q / [p choose k-r]_q`, as printed.
    Printed,
    /// `C(k,r) [p choose k]_q / [p choose k-r]_q`, the form consistent with
    /// `omega`.
    Consistent,
}

impl ShiftReading {
    pub const ALL: [ShiftReading; 2] = [ShiftReading::Printed, ShiftReading::Consistent];

    pub fn coefficient(self, p: usize, k: usize, r: usize) -> Result<Scalar> {
        if r > k || k > p {
            return Err(Error::OutOfRange(format!(
                "shift coefficient p={p} k={k} r={r}"
            )));
        }
        let (p, k, r) = (p as i64, k as i64, r as i64);
        let ratio = match self {
            ShiftReading::Printed => {
                int(binomial(p, k)) * q_binomial(k, r)? / q_binomial(p, k - r)?
            }
            ShiftReading::Consistent => {
                int(binomial(k, r)) * q_binomial(p, k)? / q_binomial(p, k - r)?
            }
        };
        Ok(q_pow(-r * (p - 1)) * ratio)
    }
}

fn xy_vars() -> (usize, usize) {
    (vars::builtin("x"), vars::builtin("y"))
}

/// The defining double sum `sum_{s,k} (-x)^{p-s} (-y)^k xi(p,s,k)`.
pub fn phi_from_xi(p: usize) -> Result<Scalar> {
    let (xv, yv) = xy_vars();
    let x = Scalar::var_index(xv);
    let y = Scalar::var_index(yv);
    let mut acc = Scalar::zero();
    for s in 0..=p {
        for k in 0..=s {
            acc = acc + x.neg().pow((p - s) as i32)? * y.neg().pow(k as i32)? * xi(p, s, k)?;
        }
    }
    Ok(acc)
}

/// Product form `(-1)^p q^{-p(p-1)} prod_{k=0}^{upper} (x q^{p-1} + y q^{2k} - lambda q^k k_q)`.
pub fn phi_product(p: usize, upper: usize) -> Scalar {
    let (xv, yv) = xy_vars();
    let x = Scalar::var_index(xv);
    let y = Scalar::var_index(yv);
    let lambda = Scalar::lambda();
    let pi = p as i64;
    let sign = if p % 2 == 0 { 1 } else { -1 };
    let mut acc = Scalar::integer(sign) * q_pow(-pi * (pi - 1));
    for k in 0..=upper as i64 {
        let factor = &x * &q_pow(pi - 1) + &y * &q_pow(2 * k) - &lambda * &q_pow(k) * q_number(k);
        acc = acc * factor;
    }
    acc
}

/// Which upper product limit reproduces the defining sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiVerdict {
    pub p: usize,
    pub upper_p_matches: bool,
    pub upper_p_minus_1_matches: bool,
    /// Extracting coefficients of the matching product returns `xi`.
    pub extraction_inverts: bool,
}

impl PhiVerdict {
    /// Exactly one limit matches and coefficient extraction inverts it.
    pub fn decisive(&self) -> bool {
        self.upper_p_matches != self.upper_p_minus_1_matches && self.extraction_inverts
    }

    pub fn matching_upper(&self) -> Option<usize> {
        match (self.upper_p_matches, self.upper_p_minus_1_matches) {
            (true, false) => Some(self.p),
            (false, true) => Some(self.p - 1),
            _ => None,
        }
    }
}

pub fn compare_phi(p: usize) -> Result<PhiVerdict> {
    if p == 0 {
        return Err(Error::OutOfRange("compare_phi needs p >= 1".into()));
    }
    let defined = phi_from_xi(p)?;
    let upper_p = phi_product(p, p) == defined;
    let upper_pm1 = phi_product(p, p - 1) == defined;
    let matching = match (upper_p, upper_pm1) {
        (true, false) => Some(phi_product(p, p)),
        (false, true) => Some(phi_product(p, p - 1)),
        _ => None,
    };
    let extraction_inverts = match matching {
        Some(phi) => {
            let mut ok = true;
            for s in 0..=p {
                for k in 0..=s {
                    ok &= xi_from_phi(&phi, p, s, k)? == xi(p, s, k)?;
                }
            }
            ok
        }
        None => false,
    };
    Ok(PhiVerdict {
        p,
        upper_p_matches: upper_p,
        upper_p_minus_1_matches: upper_pm1,
        extraction_inverts,
    })
}

/// `(-1)^{p-s+k}` times the coefficient of `x^{p-s} y^k`.
pub fn xi_from_phi(phi: &Scalar, p: usize, s: usize, k: usize) -> Result<Scalar> {
    check_range(p, s, k)?;
    let c = coefficient_xy(phi, p - s, k)?;
    Ok(if (p - s + k) % 2 == 0 { c } else { c.neg() })
}

/// Coefficient of `x^a y^b` in a scalar whose denominator is free of `x`, `y`.
pub fn coefficient_xy(f: &Scalar, a: usize, b: usize) -> Result<Scalar> {
    let (xv, yv) = xy_vars();
    let den = f.denominator();
    if den.degree_in(xv) > 0 || den.degree_in(yv) > 0 {
        return Err(Error::OutOfRange("denominator depends on x or y".into()));
    }
    let pick = |p: &Poly, v: usize, e: usize| -> Poly {
        p.coeffs_in(v).get(e).cloned().unwrap_or_else(Poly::zero)
    };
    let c = pick(&pick(f.numerator(), xv, a), yv, b);
    Scalar::new(c, den.clone())
}

/// One row of the coefficient table.
#[derive(Clone, Debug, Serialize)]
pub struct CoeffRow {
    pub p: usize,
    pub s: usize,
    pub k: usize,
    pub xi: String,
    pub xi_closed: String,
    pub omega: String,
    pub rho: String,
    pub closed_form_agrees: bool,
    pub omega_diagonal_is_one: Option<bool>,
    pub rho_finite: bool,
}

/// All rows `0 <= k <= s <= p` for `p` in `1..=max_p`, in lexicographic order.
pub fn coefficient_table(max_p: usize) -> Result<Vec<CoeffRow>> {
    let mut rows = Vec::new();
    for p in 1..=max_p {
        for s in 0..=p {
            for k in 0..=s {
                let x = xi(p, s, k)?;
                let xc = xi_closed(p, s, k)?;
                let w = omega(p, s, k)?;
                let r = rho(p, s, k);
                rows.push(CoeffRow {
                    p,
                    s,
                    k,
                    xi: x.to_string(),
                    xi_closed: xc.to_string(),
                    omega: w.to_string(),
                    rho: r
                        .as_ref()
                        .map_or_else(|e| format!("error: {e}"), |v| v.to_string()),
                    closed_form_agrees: x == xc,
                    omega_diagonal_is_one: (s == k).then(|| w.is_one()),
                    rho_finite: r.is_ok(),
                });
            }
        }
    }
    Ok(rows)
}
