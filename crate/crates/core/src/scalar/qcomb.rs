//! q-numbers, q-factorials and Gaussian binomials.

use num_bigint::BigInt;

use super::{vars, Scalar};
use crate::error::{Error, Result};

/// `r_q = (q^r - q^-r)/(q - q^-1)`, expanded as `sum q^(r-1-2i)`.
pub fn q_number(r: i64) -> Scalar {
    if r < 0 {
        return -q_number(-r);
    }
    let q = Scalar::q();
    (0..r).map(|i| q.pow((r - 1 - 2 * i) as i32).unwrap()).sum()
}

pub fn q_factorial(r: i64) -> Result<Scalar> {
    if r < 0 {
        return Err(Error::OutOfRange(format!("q_factorial({r})")));
    }
    Ok((1..=r).map(q_number).product())
}

/// Gaussian binomial `[p choose k]_q`, symmetric in `q <-> 1/q`.
pub fn q_binomial(p: i64, k: i64) -> Result<Scalar> {
    if k < 0 || p < 0 || k > p {
        return Err(Error::OutOfRange(format!("q_binomial({p}, {k})")));
    }
    let num = q_factorial(p)?;
    let den = &q_factorial(k)? * &q_factorial(p - k)?;
    num.checked_div(&den)
}

/// Ordinary binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, i| a * BigInt::from(i))
}

/// Checks `sum_k x^k q^(-k(p-1)) [p choose k]_q = prod_{k<p} (1 + x q^(-2k))`.
pub fn q_binomial_theorem_check(p: i64) -> bool {
    if p < 1 {
        return false;
    }
    let q = Scalar::q();
    let x = Scalar::var_index(vars::builtin("x"));
    let lhs: Scalar = (0..=p)
        .map(|k| {
            x.pow(k as i32).unwrap()
                * q.pow((-k * (p - 1)) as i32).unwrap()
                * q_binomial(p, k).unwrap()
        })
        .sum();
    let rhs: Scalar = (0..p)
        .map(|k| Scalar::one() + &x * &q.pow((-2 * k) as i32).unwrap())
        .product();
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn small_q_numbers() {
        assert!(q_number(0).is_zero());
        assert!(q_number(1).is_one());
        assert_eq!(q_number(2), s("q + 1/q"));
    }

    #[test]
    fn q_number_matches_quotient_definition() {
        for r in 0..7 {
            let def = s(&format!("(q^{r} - q^-{r})/(q - q^-1)"));
            assert_eq!(q_number(r), def, "r = {r}");
        }
    }

    #[test]
    fn q_binomial_four_two() {
        // 4_q 3_q / 2_q expanded by hand: q^4 + q^2 + 2 + q^-2 + q^-4
        let expected = s("q^4 + q^2 + 2 + q^-2 + q^-4");
        assert_eq!(q_binomial(4, 2).unwrap(), expected);
        assert_eq!(
            q_binomial(4, 2).unwrap(),
            &q_number(4) * &q_number(3) / q_number(2)
        );
    }

    #[test]
    fn factorial_conventions() {
        assert!(q_factorial(0).unwrap().is_one());
        assert!(q_binomial(5, 0).unwrap().is_one());
        assert!(q_binomial(2, 3).is_err());
        assert!(q_factorial(-1).is_err());
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(2, 5), BigInt::from(0));
    }

    #[test]
    fn binomial_theorem_small() {
        for p in 1..=4 {
            assert!(q_binomial_theorem_check(p), "p = {p}");
        }
    }

    #[test]
    fn binomials_are_laurent_and_symmetric() {
        for p in 0..=8 {
            for k in 0..=p {
                let b = q_binomial(p, k).unwrap();
                assert!(b.is_laurent(), "({p},{k})");
                assert_eq!(b, q_binomial(p, p - k).unwrap());
            }
        }
    }
}
