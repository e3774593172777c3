//! Degree-truncated noncommutative rewriting: normal forms, overlap
//! completion, ideal membership and normal-word counting.
//!
//! Rules are stored over the *ranked* alphabet of their [`MonomialOrder`]
//! (letters relabelled by precedence), so the natural `Word` order is the
//! monomial order internally. Everything crossing the public API is in the
//! caller's alphabet.

mod complete;
mod count;
mod rules;

use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::{MonomialOrder, Polynomial, Scalar, Word};

pub use count::NormalWordAutomaton;
pub use rules::Certificate;

use rules::RuleSet;

/// `lhs → rhs`; every word of `rhs` is smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Polynomial,
}

impl RewriteRule {
    pub fn poly(&self) -> Polynomial {
        let mut p = -&self.rhs;
        p.add_term(self.lhs.clone(), Scalar::from_integer(1.into()));
        p
    }

    pub fn is_monomial(&self) -> bool {
        self.rhs.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Member,
    NonMemberUpToDegree,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Member => "member",
            Verdict::NonMemberUpToDegree => "non-member-up-to-degree",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Per-degree dimensions `dims[d]`, `d = 0..=max_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertVector {
    pub dims: Vec<u128>,
    pub exact: bool,
}

/// Result of [`complete_truncated`].
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    set: RuleSet,
    order: MonomialOrder,
    truncation_degree: usize,
    complete: bool,
    homogeneous: bool,
    degenerate: bool,
    saturated: bool,
    inputs: Vec<Polynomial>,
}

impl RewriteSystem {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn num_generators(&self) -> usize {
        self.order.num_generators()
    }

    pub fn truncation_degree(&self) -> usize {
        self.truncation_degree
    }

    /// Every overlap of degree up to the truncation resolves, and nothing
    /// beyond the truncation can affect lower degrees.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// The unit lies in the ideal.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// No overlap was discarded at all, so the rules form a full Gröbner
    /// basis regardless of the truncation.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn exact(&self) -> bool {
        self.complete && self.homogeneous
    }

    pub fn len(&self) -> usize {
        self.set.live_count()
    }

    pub fn is_empty(&self) -> bool {
        self.set.live_count() == 0
    }

    /// Rules in the caller's alphabet, sorted by left-hand side in the
    /// monomial order.
    pub fn rules(&self) -> Vec<RewriteRule> {
        let mut v: Vec<(Word, RewriteRule)> = self
            .set
            .live()
            .map(|(_, r)| {
                (
                    r.lhs.clone(),
                    RewriteRule {
                        lhs: self.order.from_ranked(&r.lhs),
                        rhs: self.order.poly_from_ranked(&r.rhs),
                    },
                )
            })
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v.into_iter().map(|(_, r)| r).collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.set.live().all(|(_, r)| r.rhs.is_zero())
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let ranked = self.order.poly_to_ranked(p);
        self.order.poly_from_ranked(&self.set.reduce(ranked))
    }

    pub fn is_normal_word(&self, w: &Word) -> bool {
        !self.set.is_reducible(self.order.to_ranked(w).letters())
    }

    /// Expresses `p - reduce(p)` as `Σ c · u · input[i] · v` over the input
    /// relations. Only available on systems built with
    /// [`complete_truncated_traced`].
    pub fn certificate(&self, p: &Polynomial) -> Option<(Polynomial, Certificate)> {
        if self.set.live().any(|(_, r)| r.cert.is_none()) {
            return None;
        }
        let ranked = self.order.poly_to_ranked(p);
        let (nf, cert) = self.set.reduce_traced(ranked, Some(Certificate::new()));
        let cert = cert?
            .into_iter()
            .map(|((i, u, v), c)| ((i, self.order.from_ranked(&u), self.order.from_ranked(&v)), -c))
            .collect();
        Some((self.order.poly_from_ranked(&nf), cert))
    }

    /// Certificate of each rule polynomial `lhs - rhs` in terms of the
    /// inputs, in the order of [`rules`](Self::rules).
    pub fn rule_certificates(&self) -> Option<Vec<Certificate>> {
        let mut v: Vec<(Word, Certificate)> = Vec::new();
        for (_, r) in self.set.live() {
            let cert = r.cert.as_ref()?;
            let mapped = cert
                .iter()
                .map(|((i, u, w), c)| {
                    (
                        (*i, self.order.from_ranked(u), self.order.from_ranked(w)),
                        c.clone(),
                    )
                })
                .collect();
            v.push((r.lhs.clone(), mapped));
        }
        v.sort_by(|a, b| a.0.cmp(&b.0));
        Some(v.into_iter().map(|(_, c)| c).collect())
    }

    /// The input relations the system was completed from.
    pub fn inputs(&self) -> &[Polynomial] {
        &self.inputs
    }

    /// Overlap S-polynomials of degree within the truncation whose normal
    /// form is nonzero. Empty for a complete system.
    pub fn confluence_violations(&self) -> Vec<(Word, Polynomial)> {
        let rules = self.rules();
        let mut out = Vec::new();
        for r1 in &rules {
            for r2 in &rules {
                let a = r1.lhs.letters();
                let b = r2.lhs.letters();
                for k in complete::suffix_prefix_overlaps(a, b) {
                    if a.len() + b.len() - k > self.truncation_degree {
                        continue;
                    }
                    let s = &r1.poly().sandwich(&[], &b[k..]) - &r2.poly().sandwich(&a[..a.len() - k], &[]);
                    let nf = self.reduce(&s);
                    if !nf.is_zero() {
                        out.push((Word::concat3(a, &b[k..], &[]), nf));
                    }
                }
            }
        }
        out
    }

    pub(crate) fn lhs_words(&self) -> Vec<Word> {
        self.set.live().map(|(_, r)| r.lhs.clone()).collect()
    }
}

/// Normal form of `p`.
pub fn reduce_poly(p: &Polynomial, rs: &RewriteSystem) -> Polynomial {
    rs.reduce(p)
}

/// Ambiguity words of two rules: proper suffix/prefix overlaps of `lhs(r1)`
/// with `lhs(r2)`, plus `lhs(r1)` itself when `lhs(r2)` is a proper factor.
pub fn find_overlaps(r1: &RewriteRule, r2: &RewriteRule) -> Vec<Word> {
    let a = r1.lhs.letters();
    let b = r2.lhs.letters();
    let mut out: Vec<Word> = complete::suffix_prefix_overlaps(a, b)
        .into_iter()
        .map(|k| Word::concat3(a, &b[k..], &[]))
        .collect();
    if (b.len() < a.len() && r1.lhs.has_factor(b)) || (r1.lhs == r2.lhs && r1.rhs != r2.rhs) {
        out.push(r1.lhs.clone());
    }
    out.sort();
    out.dedup();
    out
}

fn build(rels: &[Polynomial], ord: &MonomialOrder, max_deg: usize, track: bool) -> Result<RewriteSystem> {
    let n = ord.num_generators();
    for r in rels {
        if let Some(l) = r.max_letter() {
            if l as usize >= n {
                return Err(Error::UndeclaredGenerator(format!("#{}", l + 1)));
            }
        }
        let d = r.degree().unwrap_or(0);
        if d > max_deg {
            return Err(Error::DegreeExceedsTruncation {
                degree: d,
                bound: max_deg,
            });
        }
    }
    let homogeneous = rels.iter().all(Polynomial::is_homogeneous);
    let ranked: Vec<Polynomial> = rels.iter().map(|r| ord.poly_to_ranked(r)).collect();
    let out = complete::complete_ranked(&ranked, max_deg, track);
    Ok(RewriteSystem {
        set: out.rules,
        order: ord.clone(),
        truncation_degree: max_deg,
        complete: out.degenerate || homogeneous || !out.discarded,
        homogeneous,
        degenerate: out.degenerate,
        saturated: out.degenerate || !out.discarded,
        inputs: rels.to_vec(),
    })
}

/// Completes `rels` by processing overlaps in increasing degree, dropping
/// those above `max_deg`.
pub fn complete_truncated(rels: &[Polynomial], ord: &MonomialOrder, max_deg: usize) -> Result<RewriteSystem> {
    build(rels, ord, max_deg, false)
}

/// As [`complete_truncated`], additionally recording how every rule arises
/// from the inputs (see [`RewriteSystem::certificate`]).
pub fn complete_truncated_traced(
    rels: &[Polynomial],
    ord: &MonomialOrder,
    max_deg: usize,
) -> Result<RewriteSystem> {
    build(rels, ord, max_deg, true)
}

pub fn ideal_member(p: &Polynomial, rs: &RewriteSystem) -> Result<Verdict> {
    let d = p.degree().unwrap_or(0);
    if d > rs.truncation_degree {
        return Err(Error::DegreeExceedsTruncation {
            degree: d,
            bound: rs.truncation_degree,
        });
    }
    if rs.reduce(p).is_zero() {
        Ok(Verdict::Member)
    } else if rs.complete && rs.homogeneous {
        Ok(Verdict::NonMemberUpToDegree)
    } else {
        Ok(Verdict::Unknown)
    }
}

/// Number of degree-`d` words containing no rule left-hand side.
pub fn count_normal_words(rs: &RewriteSystem, d: usize) -> Result<u128> {
    if d > rs.truncation_degree {
        return Err(Error::DegreeOutOfRange(d));
    }
    Ok(count::count_by_enumeration(&rs.set, rs.num_generators(), d))
}

pub fn hilbert_profile(rs: &RewriteSystem, max_d: usize) -> Result<HilbertVector> {
    if max_d > rs.truncation_degree {
        return Err(Error::DegreeOutOfRange(max_d));
    }
    let words = rs.lhs_words();
    let aut = NormalWordAutomaton::from_factors(words.iter().map(Word::letters), rs.num_generators());
    Ok(HilbertVector {
        dims: aut.path_counts(max_d),
        exact: rs.exact(),
    })
}

/// Recognizer of the normal words of a monomial system, over the caller's
/// alphabet.
pub fn normal_word_automaton(rs: &RewriteSystem) -> Result<NormalWordAutomaton> {
    if !rs.is_monomial() {
        return Err(Error::NonMonomialRule);
    }
    let words: Vec<Word> = rs.rules().into_iter().map(|r| r.lhs).collect();
    Ok(NormalWordAutomaton::from_factors(
        words.iter().map(Word::letters),
        rs.num_generators(),
    ))
}

/// Re-expands a certificate `Σ c · u · rels[i] · v`.
pub fn expand_certificate(cert: &Certificate, rels: &[Polynomial]) -> Polynomial {
    let mut out = Polynomial::zero();
    for ((i, u, v), c) in cert {
        out.add_scaled(&rels[*i].sandwich(u.letters(), v.letters()), c);
    }
    out
}
