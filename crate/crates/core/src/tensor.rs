//! Dense linear operators on tensor powers of an `n`-dimensional space.
//!
//! Multi-indices are linearized row-major with the leftmost factor most
//! significant. Legs are numbered from 1 in the public API.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{qcomb, Scalar};

/// Ring elements usable as operator entries. Scalars are central.
pub trait Coefficient: Clone + PartialEq + Send + Sync + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_scalar(s: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn add_assign(&mut self, other: &Self) {
        *self = Coefficient::add(self, other);
    }
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn scale(&self, s: &Scalar) -> Self {
        self.mul_ref(s)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
}

/// Operator on `V^{⊗k}` with `dim V = n`.
#[derive(Clone, PartialEq)]
pub struct TensorOp<T = Scalar> {
    n: usize,
    k: usize,
    dim: usize,
    entries: Vec<T>,
}

impl<T: Coefficient> TensorOp<T> {
    pub fn zero(n: usize, k: usize) -> Self {
        let dim = n.pow(k as u32);
        TensorOp {
            n,
            k,
            dim,
            entries: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(n: usize, k: usize) -> Self {
        let mut op = Self::zero(n, k);
        for i in 0..op.dim {
            op.entries[i * op.dim + i] = T::one();
        }
        op
    }

    /// The flip `v ⊗ w ↦ w ⊗ v` on `V^{⊗2}`.
    pub fn flip(n: usize) -> Self {
        let mut op = Self::zero(n, 2);
        for i in 0..n {
            for j in 0..n {
                op.set(i * n + j, j * n + i, T::one());
            }
        }
        op
    }

    /// Build from a function of 0-based multi-indices.
    pub fn from_fn(n: usize, k: usize, mut f: impl FnMut(&[usize], &[usize]) -> T) -> Self {
        let mut op = Self::zero(n, k);
        let mut row = vec![0; k];
        let mut col = vec![0; k];
        for r in 0..op.dim {
            op.decode_into(r, &mut row);
            for c in 0..op.dim {
                op.decode_into(c, &mut col);
                op.entries[r * op.dim + c] = f(&row, &col);
            }
        }
        op
    }

    pub fn from_entries(n: usize, k: usize, entries: Vec<T>) -> Result<Self> {
        let dim = n.pow(k as u32);
        if entries.len() != dim * dim {
            return Err(Error::ShapeMismatch(format!(
                "expected {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(TensorOp { n, k, dim, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn legs(&self) -> usize {
        self.k
    }

    /// Side length `n^k` of the matrix.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.entries[row * self.dim + col] = value;
    }

    /// Linear index of a 0-based multi-index.
    pub fn encode(&self, multi: &[usize]) -> usize {
        multi.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.k];
        for slot in out.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
        out
    }

    fn decode_into(&self, mut idx: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
    }

    pub fn get_multi(&self, row: &[usize], col: &[usize]) -> &T {
        self.get(self.encode(row), self.encode(col))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::ShapeMismatch(format!(
                "(n={}, k={}) vs (n={}, k={})",
                self.n, self.k, other.n, other.k
            )));
        }
        Ok(())
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U + Sync + Send) -> TensorOp<U> {
        TensorOp {
            n: self.n,
            k: self.k,
            dim: self.dim,
            entries: self.entries.par_iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Coefficient>(
        &self,
        f: impl Fn(&T) -> Result<U> + Sync + Send,
    ) -> Result<TensorOp<U>> {
        Ok(TensorOp {
            n: self.n,
            k: self.k,
            dim: self.dim,
            entries: self.entries.par_iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Matrix product `self · other` (apply `other` first). Entry products
    /// keep the order `self[i][j] * other[j][k]`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let dim = self.dim;
        let sparse_rows: Vec<Vec<(usize, &T)>> = (0..dim)
            .map(|j| {
                (0..dim)
                    .filter_map(|c| {
                        let e = other.get(j, c);
                        (!e.is_zero()).then_some((c, e))
                    })
                    .collect()
            })
            .collect();
        let entries: Vec<T> = (0..dim)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut row = vec![T::zero(); dim];
                for j in 0..dim {
                    let a = self.get(i, j);
                    if a.is_zero() {
                        continue;
                    }
                    for &(c, b) in &sparse_rows[j] {
                        row[c].add_assign(&a.mul(b));
                    }
                }
                row
            })
            .collect();
        Ok(TensorOp {
            n: self.n,
            k: self.k,
            dim,
            entries,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let entries = self
            .entries
            .par_iter()
            .zip(other.entries.par_iter())
            .map(|(a, b)| Coefficient::add(a, b))
            .collect();
        Ok(TensorOp {
            entries,
            ..self.clone_shape()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let entries = self
            .entries
            .par_iter()
            .zip(other.entries.par_iter())
            .map(|(a, b)| Coefficient::sub(a, b))
            .collect();
        Ok(TensorOp {
            entries,
            ..self.clone_shape()
        })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map(|e| e.scale(s))
    }

    pub fn neg(&self) -> Self {
        self.map(|e| e.neg())
    }

    fn clone_shape(&self) -> Self {
        TensorOp {
            n: self.n,
            k: self.k,
            dim: self.dim,
            entries: Vec::new(),
        }
    }

    /// `id^{⊗left} ⊗ self ⊗ id^{⊗right}`.
    pub fn pad(&self, left: usize, right: usize) -> Self {
        let n = self.n;
        let k = left + self.k + right;
        let inner = self.dim;
        let right_dim = n.pow(right as u32);
        let left_dim = n.pow(left as u32);
        let mut out = Self::zero(n, k);
        let dim = out.dim;
        for x in 0..left_dim {
            for y in 0..right_dim {
                for a in 0..inner {
                    for c in 0..inner {
                        let e = self.get(a, c);
                        if e.is_zero() {
                            continue;
                        }
                        let r = (x * inner + a) * right_dim + y;
                        let col = (x * inner + c) * right_dim + y;
                        out.entries[r * dim + col] = e.clone();
                    }
                }
            }
        }
        out
    }

    /// Place a two-leg operator on legs `(i, i+1)` of a `k`-fold power.
    pub fn embed(&self, i: usize, k: usize) -> Result<Self> {
        if self.k != 2 {
            return Err(Error::ShapeMismatch(format!(
                "embed expects a two-leg operator, got {} legs",
                self.k
            )));
        }
        if i == 0 || i + 1 > k {
            return Err(Error::OutOfRange(format!("embed position {i} for k = {k}")));
        }
        Ok(self.pad(i - 1, k - i - 1))
    }

    /// Trace over the given legs (1-based); the rest keep their order.
    pub fn partial_trace(&self, legs: &[usize]) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::OutOfRange("empty leg set".into()));
        }
        let mut traced = vec![false; self.k];
        for &l in legs {
            if l == 0 || l > self.k || traced[l - 1] {
                return Err(Error::OutOfRange(format!("invalid leg set {legs:?}")));
            }
            traced[l - 1] = true;
        }
        let kept: Vec<usize> = (0..self.k).filter(|&m| !traced[m]).collect();
        let gone: Vec<usize> = (0..self.k).filter(|&m| traced[m]).collect();
        let mut out = Self::zero(self.n, kept.len());
        let t_dim = self.n.pow(gone.len() as u32);
        let weights: Vec<usize> = (0..self.k)
            .map(|m| self.n.pow((self.k - 1 - m) as u32))
            .collect();
        let place = |kept_idx: usize, t: usize| -> usize {
            let mut idx = 0;
            let mut rest = kept_idx;
            for &m in kept.iter().rev() {
                idx += (rest % self.n) * weights[m];
                rest /= self.n;
            }
            let mut rest = t;
            for &m in gone.iter().rev() {
                idx += (rest % self.n) * weights[m];
                rest /= self.n;
            }
            idx
        };
        let odim = out.dim;
        out.entries = (0..odim * odim)
            .into_par_iter()
            .map(|rc| {
                let (r, c) = (rc / odim, rc % odim);
                let mut acc = T::zero();
                for t in 0..t_dim {
                    let e = self.get(place(r, t), place(c, t));
                    if !e.is_zero() {
                        acc.add_assign(e);
                    }
                }
                acc
            })
            .collect();
        Ok(out)
    }

    /// Full trace.
    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.dim {
            acc.add_assign(self.get(i, i));
        }
        acc
    }

    /// Transpose in the indices of one leg (1-based).
    pub fn partial_transpose(&self, leg: usize) -> Result<Self> {
        if leg == 0 || leg > self.k {
            return Err(Error::OutOfRange(format!("leg {leg}")));
        }
        let w = self.n.pow((self.k - leg) as u32);
        let digit = |idx: usize| (idx / w) % self.n;
        let mut out = Self::zero(self.n, self.k);
        for r in 0..self.dim {
            for c in 0..self.dim {
                let (dr, dc) = (digit(r), digit(c));
                let r2 = r - dr * w + dc * w;
                let c2 = c - dc * w + dr * w;
                out.entries[r2 * self.dim + c2] = self.get(r, c).clone();
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.n, self.k);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.entries[c * self.dim + r] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Product of a chain, left to right.
    pub fn chain<'a>(ops: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        T: 'a,
    {
        let mut it = ops.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::OutOfRange("empty operator chain".into()))?
            .clone();
        it.try_fold(first, |acc, op| acc.compose(op))
    }
}

impl TensorOp<Scalar> {
    /// Reinterpret with entries in another coefficient ring.
    pub fn lift<U: Coefficient>(&self) -> TensorOp<U> {
        self.map(U::from_scalar)
    }

    pub fn substitute(&self, b: &crate::scalar::Bindings) -> Result<Self> {
        self.try_map(|e| e.substitute(b))
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|r| self.entries[r * self.dim..(r + 1) * self.dim].to_vec())
            .collect();
        matrix_rank(rows)
    }

    pub fn determinant(&self) -> Scalar {
        let rows: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|r| self.entries[r * self.dim..(r + 1) * self.dim].to_vec())
            .collect();
        determinant(rows)
    }
}

impl<T: Coefficient> fmt::Debug for TensorOp<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TensorOp(n={}, k={})", self.n, self.k)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Row echelon form in place; returns the pivot count. Only nonzero scalars
/// are ever chosen as pivots, preferring the simplest candidate.
fn eliminate(rows: &mut [Vec<Scalar>], track_sign: &mut Scalar) -> usize {
    let height = rows.len();
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        if rank == height {
            break;
        }
        let pivot = (rank..height)
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| {
                let s = &rows[r][col];
                s.numerator().len() + s.denominator().len()
            });
        let Some(p) = pivot else { continue };
        if p != rank {
            rows.swap(p, rank);
            *track_sign = track_sign.neg();
        }
        let pivot_inv = rows[rank][col].inv().expect("nonzero pivot");
        let pivot_row = rows[rank].clone();
        rows[rank + 1..].par_iter_mut().for_each(|row| {
            if row[col].is_zero() {
                return;
            }
            let factor = &row[col] * &pivot_inv;
            for c in col..width {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&factor * &pivot_row[c]);
                }
            }
        });
        rank += 1;
    }
    rank
}

/// Rank over the rational-function field.
pub fn matrix_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let mut sign = Scalar::one();
    eliminate(&mut rows, &mut sign)
}

/// Determinant of a square matrix.
pub fn determinant(mut rows: Vec<Vec<Scalar>>) -> Scalar {
    let n = rows.len();
    let mut sign = Scalar::one();
    let rank = eliminate(&mut rows, &mut sign);
    if rank < n {
        return Scalar::zero();
    }
    (0..n).fold(sign, |acc, i| acc * &rows[i][i])
}

/// q-antisymmetrizer on `l` legs, built level by level from
/// `P(l) = (l-1)_q / l_q · P(l-1) (q^{l-1}/(l-1)_q − R_{l-1}) P(l-1)`,
/// then checked for idempotency and absorption `R_i P = P R_i = −q^{-1} P`.
pub fn antisymmetrizer(r: &TensorOp<Scalar>, q: &Scalar, l: usize) -> Result<TensorOp<Scalar>> {
    let p = antisymmetrizer_unchecked(r, q, l)?;
    check_antisymmetrizer(r, q, &p)?;
    Ok(p)
}

/// The same construction without the contract check.
pub fn antisymmetrizer_unchecked(
    r: &TensorOp<Scalar>,
    q: &Scalar,
    l: usize,
) -> Result<TensorOp<Scalar>> {
    if l == 0 {
        return Err(Error::OutOfRange("antisymmetrizer needs l >= 1".into()));
    }
    let n = r.n();
    let mut p = TensorOp::identity(n, 1);
    for m in 2..=l {
        let prev = p.pad(0, 1);
        let qn = |k: i64| {
            qcomb::q_number(k)
                .substitute(&q_binding(q))
                .map_err(|e| Error::Antisymmetrizer(format!("q-number {k} at the given q: {e}")))
        };
        let prev_q = qn(m as i64 - 1)?;
        let cur_q = qn(m as i64)?;
        if prev_q.is_zero() || cur_q.is_zero() {
            return Err(Error::Antisymmetrizer(format!(
                "q-number vanishes at level {m}; q is a root of unity"
            )));
        }
        let shift = q.pow(m as i32 - 1)? / prev_q.clone();
        let middle = TensorOp::identity(n, m)
            .scale(&shift)
            .sub(&r.embed(m - 1, m)?)?;
        p = prev
            .compose(&middle)?
            .compose(&prev)?
            .scale(&(prev_q / cur_q));
    }
    Ok(p)
}

fn q_binding(q: &Scalar) -> crate::scalar::Bindings {
    let mut b = crate::scalar::Bindings::new();
    b.bind_index(crate::scalar::vars::lookup("q").unwrap(), q.clone());
    b
}

/// Verify idempotency and absorption for a candidate antisymmetrizer.
pub fn check_antisymmetrizer(r: &TensorOp<Scalar>, q: &Scalar, p: &TensorOp<Scalar>) -> Result<()> {
    let l = p.legs();
    if p.compose(p)? != *p {
        return Err(Error::Antisymmetrizer(format!(
            "level {l} is not idempotent"
        )));
    }
    let target = p.scale(&q.inv()?.neg());
    for i in 1..l {
        let ri = r.embed(i, l)?;
        if ri.compose(p)? != target || p.compose(&ri)? != target {
            return Err(Error::Antisymmetrizer(format!(
                "absorption fails on legs ({i}, {}) at level {l}",
                i + 1
            )));
        }
    }
    Ok(())
}
