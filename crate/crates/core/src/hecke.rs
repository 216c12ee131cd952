//! Hecke symmetries: construction, validation and JSON exchange.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{vars, Bindings, Scalar};
use crate::tensor::{self, TensorOp};

/// A validated braid-form Hecke symmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeSymmetry {
    n: usize,
    r: TensorOp,
    lambda: Scalar,
    q: Scalar,
    rank: usize,
}

/// Outcome of the four structural checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    pub yang_baxter: bool,
    pub hecke: bool,
    /// Rank `p` when the antisymmetrizer tower ends with a line at level `p`.
    pub even_rank: Option<usize>,
    pub closed: bool,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.yang_baxter && self.hecke && self.even_rank.is_some() && self.closed
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "pass" } else { "fail" };
        write!(
            f,
            "yang_baxter {}, hecke {}, even_rank {}, closed {}",
            mark(self.yang_baxter),
            mark(self.hecke),
            self.even_rank
                .map_or_else(|| "fail".to_string(), |p| format!("pass (p = {p})")),
            mark(self.closed)
        )?;
        for note in &self.notes {
            write!(f, "; {note}")?;
        }
        Ok(())
    }
}

/// The deformation parameter `t` with `t - 1/t = lambda`, when it can be
/// read off: `lambda = 0` gives 1, rational `lambda` needs a rational root,
/// otherwise the denominator monomial of `lambda` is tried.
pub fn infer_q(lambda: &Scalar) -> Option<Scalar> {
    if lambda.is_zero() {
        return Some(Scalar::one());
    }
    if let Some(l) = lambda.as_rational() {
        let disc = &l * &l + BigRational::from_integer(BigInt::from(4));
        let root = rational_sqrt(&disc)?;
        let two = BigRational::from_integer(BigInt::from(2));
        let plus = (&l + &root) / &two;
        let minus = (&l - &root) / &two;
        let t = if plus.is_positive() { plus } else { minus };
        return Some(Scalar::from_rational(t));
    }
    let den = lambda.denominator();
    if den.is_monomial() {
        let t = Scalar::from_poly(den.clone());
        if &t - &t.inv().ok()? == *lambda {
            return Some(t);
        }
        let t = t.inv().ok()?.neg();
        if &t - &t.inv().ok()? == *lambda {
            return Some(t);
        }
    }
    None
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = num_integer::Roots::sqrt(x.numer());
    let d = num_integer::Roots::sqrt(x.denom());
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

/// Run the Yang-Baxter, Hecke, evenness and closedness checks.
pub fn check_all(r: &TensorOp, lambda: &Scalar) -> ValidationReport {
    check_with_q(r, lambda).0
}

fn check_with_q(r: &TensorOp, lambda: &Scalar) -> (ValidationReport, Option<Scalar>) {
    let n = r.n();
    let mut report = ValidationReport {
        n,
        yang_baxter: false,
        hecke: false,
        even_rank: None,
        closed: false,
        notes: Vec::new(),
    };
    if r.legs() != 2 {
        report
            .notes
            .push(format!("operator has {} legs, expected 2", r.legs()));
        return (report, None);
    }
    let r12 = r.pad(0, 1);
    let r23 = r.pad(1, 0);
    report.yang_baxter =
        TensorOp::chain([&r12, &r23, &r12]).ok() == TensorOp::chain([&r23, &r12, &r23]).ok();
    let id = TensorOp::identity(n, 2);
    report.hecke = r
        .compose(r)
        .ok()
        .zip(id.add(&r.scale(lambda)).ok())
        .is_some_and(|(a, b)| a == b);
    report.closed = !skew_matrix(r).determinant().is_zero();
    if !report.closed {
        report.notes.push("R is not skew-invertible".into());
    }
    let q = infer_q(lambda);
    match (&q, report.hecke) {
        (None, _) => report
            .notes
            .push(format!("cannot solve q - 1/q = {lambda} for q")),
        (Some(_), false) => report
            .notes
            .push("evenness not examined: Hecke condition fails".into()),
        (Some(q), true) => match even_rank(r, q) {
            Ok(p) => report.even_rank = Some(p),
            Err(e) => report.notes.push(format!("evenness: {e}")),
        },
    }
    (report, q)
}

/// R with the first-leg indices transposed, read as a map pairing
/// `(row_1, col_1)` with `(row_2, col_2)`. Its invertibility is the
/// existence of `Psi` with `Tr_2 R_12 Psi_23 = P_13`.
pub fn skew_matrix(r: &TensorOp) -> TensorOp {
    let n = r.n();
    TensorOp::from_fn(n, 2, |row, col| {
        r.get_multi(&[row[0], col[0]], &[row[1], col[1]]).clone()
    })
}

/// Smallest `p` with `P(p+1) = 0`, requiring `rank P(p) = 1`.
fn even_rank(r: &TensorOp, q: &Scalar) -> Result<usize> {
    let n = r.n();
    let mut prev: Option<TensorOp> = None;
    for l in 1..=n + 1 {
        let p = tensor::antisymmetrizer(r, q, l)?;
        if p.is_zero() {
            let top = prev.expect("level one is the identity");
            let rank = top.rank();
            return if rank == 1 {
                Ok(l - 1)
            } else {
                Err(Error::Antisymmetrizer(format!(
                    "level {} has rank {rank}, expected 1",
                    l - 1
                )))
            };
        }
        prev = Some(p);
    }
    Err(Error::Antisymmetrizer(format!(
        "tower does not vanish at level {}",
        n + 1
    )))
}

/// The Drinfeld-Jimbo braid-form R for GL(n): `q` on `e_i ⊗ e_i`, the flip
/// off the diagonal, with `lambda e_i ⊗ e_j` added to the image of
/// `e_i ⊗ e_j` for `i < j`.
pub fn standard_r_matrix(n: usize) -> TensorOp {
    let q = Scalar::q();
    let lambda = Scalar::lambda();
    TensorOp::from_fn(n, 2, |row, col| {
        let (i, j) = (col[0], col[1]);
        if i == j {
            return if row == col {
                q.clone()
            } else {
                Scalar::zero()
            };
        }
        if row[0] == j && row[1] == i {
            Scalar::one()
        } else if i < j && row == col {
            lambda.clone()
        } else {
            Scalar::zero()
        }
    })
}

impl HeckeSymmetry {
    /// Validated standard symmetry of rank `n`.
    pub fn standard(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange(format!(
                "standard R needs n >= 2, got {n}"
            )));
        }
        Self::new(standard_r_matrix(n), Scalar::lambda())
    }

    /// Validate and wrap a matrix.
    pub fn new(r: TensorOp, lambda: Scalar) -> Result<Self> {
        let (report, q) = check_with_q(&r, &lambda);
        match (report.passed(), q, report.even_rank) {
            (true, Some(q), Some(rank)) => Ok(HeckeSymmetry {
                n: r.n(),
                r,
                lambda,
                q,
                rank,
            }),
            _ => Err(Error::Validation(Box::new(report))),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &TensorOp {
        &self.r
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    /// The `q` solving `q - 1/q = lambda`.
    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn report(&self) -> ValidationReport {
        check_all(&self.r, &self.lambda)
    }

    pub fn antisymmetrizer(&self, l: usize) -> Result<TensorOp> {
        tensor::antisymmetrizer(&self.r, &self.q, l)
    }

    /// Substitute into R and lambda, then validate again.
    pub fn specialize(&self, bindings: &Bindings) -> Result<Self> {
        Self::new(
            self.r.substitute(bindings)?,
            self.lambda.substitute(bindings)?,
        )
    }

    /// Indeterminates occurring in R or lambda, in table order.
    pub fn indeterminates(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        for e in self.r.entries() {
            seen.extend(e.variables());
        }
        seen.extend(self.lambda.variables());
        seen.into_iter().map(vars::name).collect()
    }

    pub fn to_json(&self) -> HeckeFile {
        let n = self.n;
        let mut entries = Vec::new();
        for row in 0..self.r.dim() {
            for col in 0..self.r.dim() {
                let v = self.r.get(row, col);
                if !v.is_zero() {
                    entries.push(HeckeEntry {
                        row: [row / n + 1, row % n + 1],
                        col: [col / n + 1, col % n + 1],
                        value: v.to_string(),
                    });
                }
            }
        }
        HeckeFile {
            n,
            indeterminates: self.indeterminates(),
            lambda: self.lambda.to_string(),
            entries,
        }
    }

    pub fn from_json(file: &HeckeFile) -> Result<Self> {
        let n = file.n;
        if n == 0 {
            return Err(Error::Schema("n must be positive".into()));
        }
        for name in &file.indeterminates {
            vars::declare(name).map_err(|e| Error::Schema(e.to_string()))?;
        }
        let parse = |what: &str, text: &str| -> Result<Scalar> {
            text.parse()
                .map_err(|e| Error::Schema(format!("{what}: {e}")))
        };
        let lambda = parse("lambda", &file.lambda)?;
        let mut r = TensorOp::zero(n, 2);
        let mut seen = BTreeSet::new();
        for entry in &file.entries {
            let idx: Vec<usize> = entry.row.iter().chain(entry.col.iter()).copied().collect();
            if idx.iter().any(|&i| i == 0 || i > n) {
                return Err(Error::Schema(format!(
                    "entry index out of range 1..={n}: row {:?} col {:?}",
                    entry.row, entry.col
                )));
            }
            if !seen.insert((entry.row, entry.col)) {
                return Err(Error::Schema(format!(
                    "duplicate entry row {:?} col {:?}",
                    entry.row, entry.col
                )));
            }
            let row = (entry.row[0] - 1) * n + entry.row[1] - 1;
            let col = (entry.col[0] - 1) * n + entry.col[1] - 1;
            r.set(row, col, parse("entry value", &entry.value)?);
        }
        Self::new(r, lambda)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: HeckeFile =
            serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_json(&file)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.to_json())?;
        std::fs::write(path, text + "\n")?;
        Ok(())
    }
}

/// On-disk form of a Hecke symmetry; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeckeFile {
    pub n: usize,
    pub indeterminates: Vec<String>,
    pub lambda: String,
    pub entries: Vec<HeckeEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeckeEntry {
    pub row: [usize; 2],
    pub col: [usize; 2],
    pub value: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at_q_one() -> Bindings {
        Bindings::new().with("q", Scalar::one())
    }

    #[test]
    fn standard_passes_all_checks() {
        for n in 2..=3 {
            let h = HeckeSymmetry::standard(n).unwrap();
            assert_eq!(h.rank(), n);
            assert_eq!(h.q(), &Scalar::q());
            assert!(h.report().passed());
        }
    }

    #[test]
    fn classical_limit_is_the_flip() {
        for n in 2..=3 {
            let r = standard_r_matrix(n).substitute(&at_q_one()).unwrap();
            assert_eq!(r, TensorOp::flip(n));
        }
    }

    #[test]
    fn flip_with_zero_lambda() {
        let report = check_all(&TensorOp::flip(2), &Scalar::zero());
        assert!(report.yang_baxter && report.hecke && report.closed);
        assert_eq!(report.even_rank, Some(2));
        assert_eq!(
            HeckeSymmetry::new(TensorOp::flip(3), Scalar::zero())
                .unwrap()
                .rank(),
            3
        );
    }

    #[test]
    fn identity_fails_hecke() {
        let report = check_all(&TensorOp::identity(2, 2), &Scalar::lambda());
        assert!(report.yang_baxter);
        assert!(!report.hecke);
        assert!(!report.passed());
    }

    #[test]
    fn hecke_restatements() {
        let h = HeckeSymmetry::standard(2).unwrap();
        let r = h.matrix();
        let id = TensorOp::identity(2, 2);
        let q = Scalar::q();
        let a = r.sub(&id.scale(&q)).unwrap();
        let b = r.add(&id.scale(&q.inv().unwrap())).unwrap();
        assert!(a.compose(&b).unwrap().is_zero());
        let r_inv = r.sub(&id.scale(h.lambda())).unwrap();
        assert_eq!(r.compose(&r_inv).unwrap(), id);
    }

    #[test]
    fn infer_q_cases() {
        assert_eq!(infer_q(&Scalar::zero()), Some(Scalar::one()));
        assert_eq!(infer_q(&Scalar::lambda()), Some(Scalar::q()));
        // 2 - 1/2 = 3/2
        assert_eq!(infer_q(&Scalar::ratio(3, 2)), Some(Scalar::integer(2)));
        assert_eq!(infer_q(&Scalar::integer(1)), None);
    }

    #[test]
    fn json_roundtrip() {
        let h = HeckeSymmetry::standard(2).unwrap();
        let file = h.to_json();
        assert_eq!(file.indeterminates, vec!["q".to_string()]);
        let back = HeckeSymmetry::from_json(&file).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn perturbed_entry_fails_validation() {
        let mut file = HeckeSymmetry::standard(2).unwrap().to_json();
        let e = file
            .entries
            .iter_mut()
            .find(|e| e.row == [1, 2] && e.col == [2, 1])
            .unwrap();
        e.value = "2".into();
        match HeckeSymmetry::from_json(&file) {
            Err(Error::Validation(report)) => assert!(!report.yang_baxter),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn schema_errors() {
        let mut file = HeckeSymmetry::standard(2).unwrap().to_json();
        file.entries[0].row = [3, 1];
        assert!(matches!(
            HeckeSymmetry::from_json(&file),
            Err(Error::Schema(_))
        ));
        let mut file = HeckeSymmetry::standard(2).unwrap().to_json();
        file.lambda = "q -".into();
        assert!(matches!(
            HeckeSymmetry::from_json(&file),
            Err(Error::Schema(_))
        ));
    }
}
