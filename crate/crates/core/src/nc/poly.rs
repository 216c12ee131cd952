use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::Result;
use crate::scalar::{Bindings, Scalar};
use crate::tensor::Coefficient;

/// Largest supported matrix size.
pub const MAX_N: usize = 15;

/// Generator `g^i_j` (0-based `i`, `j`), packed so that the natural order of
/// the code is row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u8);

impl Generator {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < MAX_N && j < MAX_N, "generator index out of range");
        Generator((i * 16 + j) as u8)
    }

    pub fn row(self) -> usize {
        (self.0 / 16) as usize
    }

    pub fn col(self) -> usize {
        (self.0 % 16) as usize
    }

    /// All `n^2` generators in order.
    pub fn all(n: usize) -> Vec<Generator> {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| Generator::new(i, j)))
            .collect()
    }
}

/// A monomial in the free algebra. Ordered by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Generator; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_slice(gens: &[Generator]) -> Self {
        Word(SmallVec::from_slice(gens))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    /// `left · self · right` without intermediate allocation.
    pub fn wrap(left: &[Generator], mid: &[Generator], right: &[Generator]) -> Word {
        let mut w = SmallVec::with_capacity(left.len() + mid.len() + right.len());
        w.extend_from_slice(left);
        w.extend_from_slice(mid);
        w.extend_from_slice(right);
        Word(w)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_word(self, "g"))
    }
}

fn fmt_word(w: &Word, prefix: &str) -> String {
    w.0.iter()
        .map(|g| format!("{prefix}{}{}", g.row() + 1, g.col() + 1))
        .collect::<Vec<_>>()
        .join("*")
}

/// Element of the free associative algebra over the scalar field.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NCPoly { terms }
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    /// The generator `g^i_j`, 0-based.
    pub fn generator(i: usize, j: usize) -> Self {
        Self::word(Word::from_slice(&[Generator::new(i, j)]))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant value if the polynomial has no generator terms.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::len)
    }

    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign_poly(&mut self, other: &NCPoly) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c);
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        big.add_assign_poly(small);
        big
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> NCPoly {
        if s.is_zero() {
            return NCPoly::zero();
        }
        if s.is_one() {
            return self.clone();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> NCPoly {
        (0..e).fold(NCPoly::one(), |acc, _| acc.mul(self))
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &NCPoly) -> NCPoly {
        self.mul(other).sub(&other.mul(self))
    }

    /// Substitute indeterminates in every coefficient.
    pub fn substitute(&self, b: &Bindings) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.substitute(b)?);
        }
        Ok(out)
    }

    /// Replace every generator by a polynomial, keeping letter order.
    pub fn substitute_generators(&self, f: impl Fn(Generator) -> NCPoly) -> NCPoly {
        let mut cache: BTreeMap<Generator, NCPoly> = BTreeMap::new();
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NCPoly::constant(c.clone());
            for g in w.letters() {
                let image = cache.entry(*g).or_insert_with(|| f(*g));
                acc = acc.mul(image);
            }
            out.add_assign_poly(&acc);
        }
        out
    }

    /// Maximal generator row/column index plus one, or 0 for constants.
    pub fn span(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|w| w.letters().iter().map(|g| g.row().max(g.col()) + 1))
            .max()
            .unwrap_or(0)
    }

    /// Rendering with generator names `prefix{i}{j}` (1-based).
    pub fn display_with(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (w, c)) in self.terms.iter().rev().enumerate() {
            let word = fmt_word(w, prefix);
            let coeff = c.to_string();
            let (neg, body) = match coeff.strip_prefix('-') {
                Some(rest) if c.is_polynomial() && c.numerator().len() == 1 => {
                    (true, rest.to_string())
                }
                _ => (false, coeff.clone()),
            };
            let needs_parens = body.contains([' ', '/']) && !w.is_empty() && !c.is_one();
            let body = if needs_parens {
                format!("({body})")
            } else {
                body
            };
            let piece = if w.is_empty() {
                body
            } else if body == "1" {
                word
            } else {
                format!("{body}*{word}")
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&piece);
        }
        out
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("g"))
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Coefficient for NCPoly {
    fn zero() -> Self {
        NCPoly::zero()
    }
    fn one() -> Self {
        NCPoly::one()
    }
    fn from_scalar(s: &Scalar) -> Self {
        NCPoly::constant(s.clone())
    }
    fn is_zero(&self) -> bool {
        NCPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        NCPoly::add(self, other)
    }
    fn neg(&self) -> Self {
        NCPoly::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        NCPoly::mul(self, other)
    }
    fn scale(&self, s: &Scalar) -> Self {
        NCPoly::scale(self, s)
    }
    fn sub(&self, other: &Self) -> Self {
        NCPoly::sub(self, other)
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_assign_poly(other);
    }
}
