use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::poly::{Generator, NCPoly, Word};
use crate::error::{Error, Result};
use crate::hecke::HeckeSymmetry;
use crate::scalar::Scalar;
use crate::tensor::{self, TensorOp};

/// The quadratic algebras presented by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algebra {
    /// Reflection equation algebra in `l^i_j`.
    RE,
    /// Its two-parameter deformation in `lb^i_j`.
    REqh,
    /// Enveloping algebra of gl(n) with parameter hbar, in `a^i_j`.
    Ugl,
}

impl Algebra {
    /// Display prefix for generators.
    pub fn prefix(self) -> &'static str {
        match self {
            Algebra::RE => "l",
            Algebra::REqh => "lb",
            Algebra::Ugl => "a",
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::RE => "RE",
            Algebra::REqh => "REqh",
            Algebra::Ugl => "Ugl",
        })
    }
}

impl FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "RE" => Ok(Algebra::RE),
            "REqh" => Ok(Algebra::REqh),
            "Ugl" => Ok(Algebra::Ugl),
            other => Err(Error::Schema(format!(
                "unknown algebra `{other}` (expected RE, REqh or Ugl)"
            ))),
        }
    }
}

/// The `n × n` matrix whose `(i, j)` entry is the generator `g^i_j`.
pub fn generator_matrix(n: usize) -> TensorOp<NCPoly> {
    TensorOp::from_fn(n, 1, |row, col| NCPoly::generator(row[0], col[0]))
}

/// `R12 L1 R12 L1 - L1 R12 L1 R12`, plus `-hbar (R12 L1 - L1 R12)` when a
/// linear coefficient is given.
fn reflection_entries(h: &HeckeSymmetry, linear: Option<&Scalar>) -> Result<Vec<NCPoly>> {
    let n = h.n();
    let r: TensorOp<NCPoly> = h.matrix().lift();
    let l1 = generator_matrix(n).pad(0, 1);
    let rl = r.compose(&l1)?;
    let lr = l1.compose(&r)?;
    let mut diff = rl.compose(&rl)?.sub(&lr.compose(&lr)?)?;
    if let Some(hbar) = linear {
        diff = diff.sub(&rl.sub(&lr)?.scale(hbar))?;
    }
    Ok(diff
        .entries()
        .iter()
        .filter(|e| !e.is_zero())
        .cloned()
        .collect())
}

/// Nonzero entries of the reflection equation.
pub fn relations_re(h: &HeckeSymmetry) -> Result<Vec<NCPoly>> {
    reflection_entries(h, None)
}

/// Nonzero entries of the reflection equation with the linear `hbar` term.
pub fn relations_reqh(h: &HeckeSymmetry) -> Result<Vec<NCPoly>> {
    reflection_entries(h, Some(&Scalar::hbar()))
}

/// gl(n) commutation relations scaled by `hbar`, one per pair of distinct
/// generators.
pub fn relations_ugl(n: usize) -> Vec<NCPoly> {
    let hbar = Scalar::hbar();
    let gens = Generator::all(n);
    let gen = |i: usize, j: usize| NCPoly::generator(i, j);
    let mut out = Vec::new();
    for (x, &g1) in gens.iter().enumerate() {
        for &g2 in &gens[x + 1..] {
            let (i1, j1, i2, j2) = (g1.row(), g1.col(), g2.row(), g2.col());
            let a1 = NCPoly::word(Word::from_slice(&[g1]));
            let a2 = NCPoly::word(Word::from_slice(&[g2]));
            let mut rhs = NCPoly::zero();
            if i2 == j1 {
                rhs = rhs.add(&gen(i1, j2));
            }
            if i1 == j2 {
                rhs = rhs.sub(&gen(i2, j1));
            }
            out.push(a1.commutator(&a2).sub(&rhs.scale(&hbar)));
        }
    }
    out
}

/// Dimension of the span of the given polynomials over the scalar field.
pub fn relation_rank(relations: &[NCPoly]) -> usize {
    let mut words: Vec<Word> = relations
        .iter()
        .flat_map(|p| p.terms().map(|(w, _)| w.clone()))
        .collect();
    words.sort();
    words.dedup();
    let rows: Vec<Vec<Scalar>> = relations
        .iter()
        .map(|p| words.iter().map(|w| p.coefficient(w)).collect())
        .collect();
    tensor::matrix_rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Bindings;

    fn g(i: usize, j: usize) -> NCPoly {
        NCPoly::generator(i, j)
    }

    #[test]
    fn ugl_sample_relation() {
        let rels = relations_ugl(2);
        assert_eq!(rels.len(), 6);
        let expected = g(0, 0)
            .commutator(&g(0, 1))
            .sub(&g(0, 1).scale(&Scalar::hbar()));
        assert!(rels.contains(&expected));
        assert!(relations_ugl(1).is_empty());
    }

    #[test]
    fn flip_gives_commutators() {
        let h = HeckeSymmetry::new(TensorOp::flip(2), Scalar::zero()).unwrap();
        let rels = relations_re(&h).unwrap();
        assert_eq!(relation_rank(&rels), 6);
        for p in &rels {
            let comm_free = p.terms().all(|(w, _)| w.len() == 2);
            assert!(comm_free);
        }
        // each relation is, up to sign, a commutator of generators
        let gens = Generator::all(2);
        for p in &rels {
            let found = gens.iter().any(|&a| {
                gens.iter().any(|&b| {
                    let c = NCPoly::word(Word::from_slice(&[a]))
                        .commutator(&NCPoly::word(Word::from_slice(&[b])));
                    !c.is_zero() && (c == *p || c.neg() == *p)
                })
            });
            assert!(found, "{p}");
        }
    }

    #[test]
    fn re_relation_space_for_n2() {
        let h = HeckeSymmetry::standard(2).unwrap();
        let rels = relations_re(&h).unwrap();
        assert!(rels.len() <= 16);
        assert_eq!(relation_rank(&rels), 6);
    }

    #[test]
    fn reqh_limits() {
        let h = HeckeSymmetry::standard(2).unwrap();
        let qh = relations_reqh(&h).unwrap();
        let no_hbar = Bindings::new().with("hbar", Scalar::zero());
        let re = relations_re(&h).unwrap();
        let limit: Vec<NCPoly> = qh
            .iter()
            .map(|p| p.substitute(&no_hbar).unwrap())
            .filter(|p| !p.is_zero())
            .collect();
        assert_eq!(limit, re);
    }
}
