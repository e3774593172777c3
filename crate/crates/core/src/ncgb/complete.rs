use std::collections::BTreeSet;

use num_traits::One;

use super::rules::{cert_add, cert_scale, cert_unit, Certificate, Rule, RuleSet};
use crate::freealg::{Polynomial, Scalar, Word};

/// A pending S-polynomial: suffix of `lhs(left)` of length `overlap` equals
/// the prefix of `lhs(right)`. Field order gives the processing order
/// (degree, then overlap word, then rule ids).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Obligation {
    degree: usize,
    word: Word,
    left: usize,
    right: usize,
    overlap: usize,
}

pub(crate) struct Outcome {
    pub rules: RuleSet,
    pub discarded: bool,
    pub degenerate: bool,
}

struct Completion {
    set: RuleSet,
    queue: BTreeSet<Obligation>,
    max_deg: usize,
    discarded: bool,
    degenerate: bool,
    track: bool,
}

/// Overlap lengths `k` with `suffix_k(a) = prefix_k(b)`, `0 < k < min(|a|,|b|)`.
pub(crate) fn suffix_prefix_overlaps(a: &[u32], b: &[u32]) -> Vec<usize> {
    let max = a.len().min(b.len());
    (1..max).filter(|&k| a[a.len() - k..] == b[..k]).collect()
}

impl Completion {
    fn spoly(&self, ob: &Obligation) -> Option<(Polynomial, Option<Certificate>)> {
        let ri = self.set.get(ob.left)?;
        let rj = self.set.get(ob.right)?;
        let a = ri.lhs.letters();
        let b = rj.lhs.letters();
        let tail = &b[ob.overlap..];
        let head = &a[..a.len() - ob.overlap];
        let mut s = ri.poly().sandwich(&[], tail);
        s.add_scaled(&rj.poly().sandwich(head, &[]), &-Scalar::one());
        let cert = if self.track {
            let mut c = Certificate::new();
            cert_add(&mut c, ri.cert.as_ref().unwrap(), &Scalar::one(), &[], tail);
            cert_add(&mut c, rj.cert.as_ref().unwrap(), &-Scalar::one(), head, &[]);
            Some(c)
        } else {
            None
        };
        Some((s, cert))
    }

    fn push_overlaps(&mut self, id: usize) {
        let lhs = self.set.get(id).expect("live").lhs.clone();
        let others: Vec<(usize, Word)> = self.set.live().map(|(j, r)| (j, r.lhs.clone())).collect();
        for (j, other) in others {
            for (left, a, right, b) in [(id, &lhs, j, &other), (j, &other, id, &lhs)] {
                if left == right && left != id {
                    continue;
                }
                for k in suffix_prefix_overlaps(a.letters(), b.letters()) {
                    let degree = a.len() + b.len() - k;
                    if degree > self.max_deg {
                        self.discarded = true;
                        continue;
                    }
                    let word = Word::concat3(a.letters(), &b.letters()[k..], &[]);
                    self.queue.insert(Obligation {
                        degree,
                        word,
                        left,
                        right,
                        overlap: k,
                    });
                }
                if left == right {
                    break;
                }
            }
        }
    }

    fn add_poly(&mut self, p: Polynomial, cert: Option<Certificate>) {
        let mut stack = vec![(p, cert)];
        while let Some((p, cert)) = stack.pop() {
            if self.degenerate {
                return;
            }
            let (q, qc) = self.set.reduce_traced(p, cert);
            let Some((lead, coef)) = q.terms().iter().next_back() else {
                continue;
            };
            let inv = coef.recip();
            let lhs = lead.clone();
            let q = q.scale(&inv);
            let qc = qc.map(|c| cert_scale(&c, &inv));
            if lhs.is_empty() {
                self.make_degenerate(qc);
                return;
            }
            let mut rhs = -&q;
            rhs.add_term(lhs.clone(), Scalar::one());
            let id = self.set.insert(Rule {
                lhs: lhs.clone(),
                rhs,
                cert: qc,
            });

            let victims: Vec<usize> = self
                .set
                .live()
                .filter(|(j, r)| *j != id && r.lhs.has_factor(lhs.letters()))
                .map(|(j, _)| j)
                .collect();
            for j in victims {
                let r = self.set.take(j);
                stack.push((r.poly(), r.cert));
            }

            let stale: Vec<usize> = self
                .set
                .live()
                .filter(|(j, r)| *j != id && r.rhs.words().any(|w| w.has_factor(lhs.letters())))
                .map(|(j, _)| j)
                .collect();
            for j in stale {
                let r = self.set.take(j);
                let (g, gc) = self.set.reduce_traced(r.poly(), r.cert);
                let mut rhs = -&g;
                rhs.add_term(r.lhs.clone(), Scalar::one());
                debug_assert_eq!(g.coefficient(&r.lhs), Scalar::one());
                self.set.put(
                    j,
                    Rule {
                        lhs: r.lhs,
                        rhs,
                        cert: gc,
                    },
                );
            }

            self.push_overlaps(id);
        }
    }

    fn make_degenerate(&mut self, cert: Option<Certificate>) {
        self.set = RuleSet::default();
        self.set.insert(Rule {
            lhs: Word::empty(),
            rhs: Polynomial::zero(),
            cert,
        });
        self.queue.clear();
        self.degenerate = true;
    }

    /// Every overlap of the live rules within the bound, recomputed from
    /// scratch.
    fn all_obligations(&self) -> Vec<Obligation> {
        let live: Vec<(usize, &Word)> = self.set.live().map(|(i, r)| (i, &r.lhs)).collect();
        let mut out = Vec::new();
        for &(i, a) in &live {
            for &(j, b) in &live {
                for k in suffix_prefix_overlaps(a.letters(), b.letters()) {
                    let degree = a.len() + b.len() - k;
                    if degree <= self.max_deg {
                        out.push(Obligation {
                            degree,
                            word: Word::concat3(a.letters(), &b.letters()[k..], &[]),
                            left: i,
                            right: j,
                            overlap: k,
                        });
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// Degree-bounded completion over a ranked alphabet.
pub(crate) fn complete_ranked(inputs: &[Polynomial], max_deg: usize, track: bool) -> Outcome {
    let mut c = Completion {
        set: RuleSet::default(),
        queue: BTreeSet::new(),
        max_deg,
        discarded: false,
        degenerate: false,
        track,
    };
    for (idx, p) in inputs.iter().enumerate() {
        let cert = track.then(|| cert_unit(idx));
        c.add_poly(p.clone(), cert);
        if c.degenerate {
            break;
        }
    }
    while !c.degenerate {
        while let Some(ob) = c.queue.pop_first() {
            if let Some((s, cert)) = c.spoly(&ob) {
                c.add_poly(s, cert);
            }
            if c.degenerate {
                break;
            }
        }
        if c.degenerate {
            break;
        }
        let mut changed = false;
        for ob in c.all_obligations() {
            if let Some((s, cert)) = c.spoly(&ob) {
                if !c.set.reduce(s.clone()).is_zero() {
                    c.add_poly(s, cert);
                    changed = true;
                }
            }
            if c.degenerate {
                break;
            }
        }
        if !changed {
            break;
        }
    }
    Outcome {
        rules: c.set,
        discarded: c.discarded,
        degenerate: c.degenerate,
    }
}
