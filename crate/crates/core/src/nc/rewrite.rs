//! Degree-bounded completion of noncommutative rewriting systems.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::poly::{Generator, NCPoly, Word};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Degree bound used when none is configured: rank plus two.
pub fn default_degree_bound(rank: usize) -> usize {
    rank + 2
}

/// Whether every overlap ambiguity resolves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompletionStatus {
    Closed,
    Truncated,
}

/// Order in which reducible occurrences are rewritten.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Largest word first, leftmost occurrence, earliest rule.
    LeftmostFirst,
    /// Largest word first, rightmost occurrence, latest rule.
    RightmostLast,
}

/// Oriented rule `lead -> tail` with `tail < lead`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lead: Word,
    pub tail: NCPoly,
}

impl Rule {
    /// The ideal element `lead - tail`.
    pub fn relation(&self) -> NCPoly {
        let mut p = self.tail.neg();
        p.add_term(self.lead.clone(), &Scalar::one());
        p
    }
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
    index: HashMap<Word, usize>,
    max_lead: usize,
    degree_bound: usize,
    status: CompletionStatus,
}

/// A pending ideal element, processed in order of its overlap degree.
struct Pending {
    degree: usize,
    seq: usize,
    poly: NCPoly,
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        (self.degree, self.seq) == (other.degree, other.seq)
    }
}
impl Eq for Pending {}
impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Pending {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree, self.seq).cmp(&(other.degree, other.seq))
    }
}

impl RewriteSystem {
    /// Orient and complete `relations`, resolving overlaps whose word has
    /// degree at most `degree_bound`.
    pub fn complete(relations: &[NCPoly], degree_bound: usize) -> Result<Self> {
        let max_deg = relations.iter().map(NCPoly::degree).max().unwrap_or(0);
        if degree_bound < max_deg {
            return Err(Error::DegreeBound {
                bound: degree_bound,
                required: max_deg,
            });
        }
        for (i, r) in relations.iter().enumerate() {
            if r.as_constant().is_some_and(|c| !c.is_zero()) {
                return Err(Error::DegenerateRelation(i));
            }
        }
        let mut sys = RewriteSystem {
            rules: Vec::new(),
            index: HashMap::new(),
            max_lead: 0,
            degree_bound,
            status: CompletionStatus::Truncated,
        };
        let mut heap: BinaryHeap<Reverse<Pending>> = BinaryHeap::new();
        let mut seq = 0;
        let mut push = |heap: &mut BinaryHeap<Reverse<Pending>>, degree: usize, poly: NCPoly| {
            seq += 1;
            heap.push(Reverse(Pending { degree, seq, poly }));
        };
        for r in relations {
            if !r.is_zero() {
                push(&mut heap, r.degree(), r.clone());
            }
        }
        let mut deferred = false;
        while let Some(Reverse(item)) = heap.pop() {
            let reduced = sys.reduce_unbounded(&item.poly, Strategy::LeftmostFirst);
            let Some((lead, lc)) = reduced.leading().map(|(w, c)| (w.clone(), c.clone())) else {
                continue;
            };
            if lead.is_empty() {
                return Err(Error::Inconsistent(
                    "relations generate the whole algebra".into(),
                ));
            }
            let monic = reduced.scale(&lc.inv()?);
            let mut tail = monic.neg();
            tail.add_term(lead.clone(), &Scalar::one());
            let new_rule = Rule { lead, tail };
            // rules whose lead contains the new lead go back to the queue
            let (keep, evicted): (Vec<Rule>, Vec<Rule>) = sys
                .rules
                .drain(..)
                .partition(|r| !contains(&r.lead, &new_rule.lead));
            sys.rules = keep;
            for r in evicted {
                let rel = r.relation();
                push(&mut heap, rel.degree(), rel);
            }
            sys.rules.push(new_rule);
            sys.reindex();
            let newest = sys.rules.len() - 1;
            for other in 0..sys.rules.len() {
                for (degree, s) in sys.overlaps(newest, other) {
                    if degree <= degree_bound {
                        push(&mut heap, degree, s);
                    } else {
                        deferred = true;
                    }
                }
            }
        }
        sys.interreduce_tails();
        sys.status = if !deferred || sys.above_bound_overlaps_resolve() {
            CompletionStatus::Closed
        } else {
            CompletionStatus::Truncated
        };
        Ok(sys)
    }

    fn reindex(&mut self) {
        self.index = self
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lead.clone(), i))
            .collect();
        self.max_lead = self.rules.iter().map(|r| r.lead.len()).max().unwrap_or(0);
    }

    fn interreduce_tails(&mut self) {
        let reduced: Vec<NCPoly> = self
            .rules
            .par_iter()
            .map(|r| self.reduce_unbounded(&r.tail, Strategy::LeftmostFirst))
            .collect();
        for (r, t) in self.rules.iter_mut().zip(reduced) {
            r.tail = t;
        }
        self.rules.sort_by(|a, b| a.lead.cmp(&b.lead));
        self.reindex();
    }

    /// S-polynomials for suffix/prefix overlaps of the two leads, both ways.
    fn overlaps(&self, a: usize, b: usize) -> Vec<(usize, NCPoly)> {
        let mut out = Vec::new();
        self.one_way_overlaps(a, b, &mut out);
        if a != b {
            self.one_way_overlaps(b, a, &mut out);
        }
        out
    }

    /// Overlaps where a proper suffix of `lead(a)` equals a proper prefix of
    /// `lead(b)`.
    fn one_way_overlaps(&self, a: usize, b: usize, out: &mut Vec<(usize, NCPoly)>) {
        let ra = &self.rules[a];
        let rb = &self.rules[b];
        let la = ra.lead.letters();
        let lb = rb.lead.letters();
        for k in 1..la.len().min(lb.len()) {
            if la[la.len() - k..] != lb[..k] {
                continue;
            }
            let left = &la[..la.len() - k];
            let right = &lb[k..];
            let degree = la.len() + right.len();
            // (tail_a) right - left (tail_b)
            let s = mul_word_right(&ra.tail, right).sub(&mul_word_left(left, &rb.tail));
            out.push((degree, s));
        }
    }

    /// Check that every overlap of the final rules beyond the bound reduces
    /// to zero, which makes the system a complete presentation.
    fn above_bound_overlaps_resolve(&self) -> bool {
        let pairs: Vec<(usize, usize)> = (0..self.rules.len())
            .flat_map(|a| (0..self.rules.len()).map(move |b| (a, b)))
            .collect();
        pairs.par_iter().all(|&(a, b)| {
            let mut out = Vec::new();
            self.one_way_overlaps(a, b, &mut out);
            out.iter()
                .all(|(_, s)| self.reduce_unbounded(s, Strategy::LeftmostFirst).is_zero())
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn status(&self) -> CompletionStatus {
        self.status
    }

    pub fn is_closed(&self) -> bool {
        self.status == CompletionStatus::Closed
    }

    /// Reduce to normal form. Truncated systems refuse inputs beyond their
    /// degree bound, where uniqueness is not guaranteed.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        self.normal_form_with(p, Strategy::LeftmostFirst)
    }

    pub fn normal_form_with(&self, p: &NCPoly, strategy: Strategy) -> Result<NCPoly> {
        if !self.is_closed() && p.degree() > self.degree_bound {
            return Err(Error::DegreeBound {
                bound: self.degree_bound,
                required: p.degree(),
            });
        }
        Ok(self.reduce_unbounded(p, strategy))
    }

    /// Normal forms of many polynomials in parallel.
    pub fn normal_forms(&self, ps: &[NCPoly]) -> Result<Vec<NCPoly>> {
        ps.par_iter().map(|p| self.normal_form(p)).collect()
    }

    fn find_reducer(&self, w: &Word, strategy: Strategy) -> Option<(usize, usize)> {
        let letters = w.letters();
        let n = letters.len();
        let max = self.max_lead.min(n);
        let mut probe = Word::empty();
        let mut check = |start: usize, len: usize| -> Option<usize> {
            probe.0.clear();
            probe.0.extend_from_slice(&letters[start..start + len]);
            self.index.get(&probe).copied()
        };
        match strategy {
            Strategy::LeftmostFirst => {
                for start in 0..n {
                    for len in 1..=max.min(n - start) {
                        if let Some(r) = check(start, len) {
                            return Some((start, r));
                        }
                    }
                }
            }
            Strategy::RightmostLast => {
                for start in (0..n).rev() {
                    for len in (1..=max.min(n - start)).rev() {
                        if let Some(r) = check(start, len) {
                            return Some((start, r));
                        }
                    }
                }
            }
        }
        None
    }

    fn reduce_unbounded(&self, p: &NCPoly, strategy: Strategy) -> NCPoly {
        let mut work: BTreeMap<Word, Scalar> = p.clone().into_terms();
        let mut done: Vec<(Word, Scalar)> = Vec::new();
        while let Some((w, c)) = work.pop_last() {
            match self.find_reducer(&w, strategy) {
                None => done.push((w, c)),
                Some((start, r)) => {
                    let rule = &self.rules[r];
                    let letters = w.letters();
                    let left = &letters[..start];
                    let right = &letters[start + rule.lead.len()..];
                    for (tw, tc) in rule.tail.terms() {
                        let nw = Word::wrap(left, tw.letters(), right);
                        let nc = &c * tc;
                        match work.entry(nw) {
                            std::collections::btree_map::Entry::Vacant(e) => {
                                e.insert(nc);
                            }
                            std::collections::btree_map::Entry::Occupied(mut e) => {
                                let sum = e.get() + &nc;
                                if sum.is_zero() {
                                    e.remove();
                                } else {
                                    *e.get_mut() = sum;
                                }
                            }
                        }
                    }
                }
            }
        }
        NCPoly::from_terms(done)
    }

    /// True iff `p q - q p` reduces to zero.
    pub fn commutes_mod(&self, p: &NCPoly, q: &NCPoly) -> Result<bool> {
        Ok(self.normal_form(&p.commutator(q))?.is_zero())
    }

    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.find_reducer(w, Strategy::LeftmostFirst).is_none()
    }

    /// Number of irreducible words of each degree `0..=max_degree` over the
    /// `n^2` generators.
    pub fn normal_word_counts(&self, n: usize, max_degree: usize) -> Vec<usize> {
        let gens = Generator::all(n);
        let mut counts = vec![1];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_degree {
            let next: Vec<Word> = layer
                .iter()
                .flat_map(|w| {
                    gens.iter().filter_map(move |g| {
                        let mut nw = w.clone();
                        nw.0.push(*g);
                        // only suffixes can contain a new lead
                        self.suffix_irreducible(&nw).then_some(nw)
                    })
                })
                .collect();
            counts.push(next.len());
            layer = next;
        }
        counts
    }

    fn suffix_irreducible(&self, w: &Word) -> bool {
        let letters = w.letters();
        let n = letters.len();
        (1..=self.max_lead.min(n)).all(|len| {
            !self
                .index
                .contains_key(&Word::from_slice(&letters[n - len..]))
        })
    }
}

fn contains(haystack: &Word, needle: &Word) -> bool {
    let (h, n) = (haystack.letters(), needle.letters());
    n.len() <= h.len() && h.windows(n.len()).any(|win| win == n)
}

fn mul_word_right(p: &NCPoly, right: &[Generator]) -> NCPoly {
    NCPoly::from_terms(
        p.terms()
            .map(|(w, c)| (Word::wrap(&[], w.letters(), right), c.clone())),
    )
}

fn mul_word_left(left: &[Generator], p: &NCPoly) -> NCPoly {
    NCPoly::from_terms(
        p.terms()
            .map(|(w, c)| (Word::wrap(left, w.letters(), &[]), c.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: usize, j: usize) -> NCPoly {
        NCPoly::generator(i, j)
    }

    #[test]
    fn commuting_pair() {
        let rel = g(0, 0).commutator(&g(0, 1));
        let sys = RewriteSystem::complete(&[rel.clone()], 4).unwrap();
        assert!(sys.is_closed());
        assert_eq!(sys.rules().len(), 1);
        assert!(sys.normal_form(&rel).unwrap().is_zero());
        let w = g(0, 1).mul(&g(0, 0)).mul(&g(0, 1));
        let nf = sys.normal_form(&w).unwrap();
        assert_eq!(nf, g(0, 0).mul(&g(0, 1)).mul(&g(0, 1)));
    }

    #[test]
    fn bound_below_relation_degree() {
        let rel = g(0, 0).commutator(&g(0, 1));
        assert!(matches!(
            RewriteSystem::complete(&[rel], 1),
            Err(Error::DegreeBound {
                bound: 1,
                required: 2
            })
        ));
    }

    #[test]
    fn nonzero_constant_is_degenerate() {
        assert!(matches!(
            RewriteSystem::complete(&[NCPoly::one()], 2),
            Err(Error::DegenerateRelation(0))
        ));
    }

    #[test]
    fn truncated_system_refuses_high_degree() {
        // x y x - y: overlaps of x y x with itself keep producing new rules
        let x = g(0, 0);
        let y = g(0, 1);
        let rel = x.mul(&y).mul(&x).sub(&y.mul(&y));
        let sys = RewriteSystem::complete(&[rel], 3).unwrap();
        if !sys.is_closed() {
            assert!(sys.normal_form(&x.pow(4)).is_err());
        }
        assert!(sys.normal_form(&x.pow(3)).is_ok());
    }

    #[test]
    fn inclusion_is_interreduced() {
        let x = g(0, 0);
        let y = g(0, 1);
        let rels = [x.mul(&y).mul(&x), x.mul(&y).sub(&y)];
        let sys = RewriteSystem::complete(&rels, 4).unwrap();
        let leads: Vec<&Word> = sys.rules().iter().map(|r| &r.lead).collect();
        for (i, a) in leads.iter().enumerate() {
            for (j, b) in leads.iter().enumerate() {
                assert!(i == j || !contains(a, b));
            }
        }
        assert!(sys.normal_form(&rels[0]).unwrap().is_zero());
    }
}
