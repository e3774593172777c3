use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::freealg::{Letter, Polynomial, Scalar, Word};

/// `Σ c · u · input[idx] · v`, keyed by `(idx, u, v)`.
pub type Certificate = BTreeMap<(usize, Word, Word), Scalar>;

pub(crate) fn cert_unit(idx: usize) -> Certificate {
    let mut c = Certificate::new();
    c.insert((idx, Word::empty(), Word::empty()), Scalar::one());
    c
}

/// `target += c · u · src · v`
pub(crate) fn cert_add(target: &mut Certificate, src: &Certificate, c: &Scalar, u: &[Letter], v: &[Letter]) {
    if c.is_zero() {
        return;
    }
    for ((idx, a, b), d) in src {
        let key = (
            *idx,
            Word::concat3(u, a.letters(), &[]),
            Word::concat3(b.letters(), v, &[]),
        );
        let slot = target.entry(key.clone()).or_insert_with(Scalar::zero);
        *slot += d * c;
        if slot.is_zero() {
            target.remove(&key);
        }
    }
}

pub(crate) fn cert_scale(c: &Certificate, s: &Scalar) -> Certificate {
    c.iter().map(|(k, v)| (k.clone(), v * s)).collect()
}

#[derive(Clone, Debug)]
pub(crate) struct Rule {
    pub lhs: Word,
    pub rhs: Polynomial,
    pub cert: Option<Certificate>,
}

impl Rule {
    /// `lhs - rhs`, the monic ideal element this rule orients.
    pub fn poly(&self) -> Polynomial {
        let mut p = -&self.rhs;
        p.add_term(self.lhs.clone(), Scalar::one());
        p
    }
}

/// Rules over a ranked alphabet (natural word order is the monomial order),
/// indexed by left-hand side for factor lookup.
#[derive(Clone, Debug, Default)]
pub(crate) struct RuleSet {
    pub rules: Vec<Option<Rule>>,
    index: HashMap<Word, usize>,
    lengths: BTreeMap<usize, usize>,
}

impl RuleSet {
    pub fn insert(&mut self, rule: Rule) -> usize {
        let id = self.rules.len();
        self.rules.push(None);
        self.put(id, rule);
        id
    }

    pub fn put(&mut self, id: usize, rule: Rule) {
        *self.lengths.entry(rule.lhs.len()).or_insert(0) += 1;
        self.index.insert(rule.lhs.clone(), id);
        self.rules[id] = Some(rule);
    }

    pub fn take(&mut self, id: usize) -> Rule {
        let rule = self.rules[id].take().expect("live rule");
        self.index.remove(&rule.lhs);
        let n = self.lengths.get_mut(&rule.lhs.len()).expect("length tracked");
        *n -= 1;
        if *n == 0 {
            self.lengths.remove(&rule.lhs.len());
        }
        rule
    }

    pub fn get(&self, id: usize) -> Option<&Rule> {
        self.rules.get(id).and_then(Option::as_ref)
    }

    pub fn live(&self) -> impl Iterator<Item = (usize, &Rule)> {
        self.rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (i, r)))
    }

    pub fn live_count(&self) -> usize {
        self.index.len()
    }

    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.lengths.keys().copied()
    }

    pub fn is_lhs(&self, w: &[Letter]) -> bool {
        self.index.contains_key(w)
    }

    /// Leftmost position of a rule left-hand side inside `w`.
    pub fn find_reducer(&self, w: &[Letter]) -> Option<(usize, usize)> {
        for pos in 0..=w.len() {
            for len in self.lengths.keys() {
                if pos + len > w.len() {
                    break;
                }
                if let Some(&id) = self.index.get(&w[pos..pos + len]) {
                    return Some((pos, id));
                }
            }
        }
        None
    }

    pub fn is_reducible(&self, w: &[Letter]) -> bool {
        self.find_reducer(w).is_some()
    }

    pub fn reduce(&self, p: Polynomial) -> Polynomial {
        self.reduce_traced(p, None).0
    }

    /// Normal form, always rewriting the largest reducible word at its
    /// leftmost reducible position. When `cert` is given it is updated so
    /// that it keeps describing the returned polynomial.
    pub fn reduce_traced(
        &self,
        p: Polynomial,
        mut cert: Option<Certificate>,
    ) -> (Polynomial, Option<Certificate>) {
        if self.index.is_empty() {
            return (p, cert);
        }
        let mut work = p.into_terms();
        let mut done: Vec<(Word, Scalar)> = Vec::new();
        while let Some((w, c)) = work.pop_last() {
            let Some((pos, id)) = self.find_reducer(w.letters()) else {
                done.push((w, c));
                continue;
            };
            let rule = self.rules[id].as_ref().expect("indexed rule is live");
            let (u, rest) = w.letters().split_at(pos);
            let v = &rest[rule.lhs.len()..];
            for (rw, rc) in rule.rhs.iter() {
                let nw = Word::concat3(u, rw.letters(), v);
                let slot = work.entry(nw.clone()).or_insert_with(Scalar::zero);
                *slot += rc * &c;
                if slot.is_zero() {
                    work.remove(&nw);
                }
            }
            if let (Some(cert), Some(rc)) = (cert.as_mut(), rule.cert.as_ref()) {
                cert_add(cert, rc, &-c.clone(), u, v);
            }
        }
        (Polynomial::from_terms(done), cert)
    }
}
