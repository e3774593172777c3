use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::freealg::{Letter, MonomialOrder, Parity, Polynomial, Word};
use crate::ncgb::{complete_truncated, RewriteSystem};
use crate::presio::{Presentation, Relation};

/// One move performed by the simplifier, in the order applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TietzeStep {
    DropDuplicate(usize),
    DeleteGenerator(String),
    Eliminate(String),
    DropRedundant(usize),
    Derive(String),
}

struct State {
    names: Vec<String>,
    parity: Option<Vec<Parity>>,
    rels: Vec<Polynomial>,
    tracked: Vec<Polynomial>,
    bound: usize,
    log: Vec<TietzeStep>,
}

fn cmp_polys(a: &Polynomial, b: &Polynomial) -> Ordering {
    let mut ia = a.iter().rev();
    let mut ib = b.iter().rev();
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((wa, ca)), Some((wb, cb))) => {
                let o = wa.cmp(wb).then_with(|| ca.cmp(cb));
                if o != Ordering::Equal {
                    return o;
                }
            }
        }
    }
}

fn monic(p: &Polynomial) -> Option<Polynomial> {
    Relation::new(p.clone()).ok().map(Relation::into_poly)
}

fn parity_homogeneous(p: &Polynomial) -> bool {
    p.homogeneous_parity(|_| Parity::Odd).is_some()
}

impl State {
    fn ord(&self) -> MonomialOrder {
        MonomialOrder::deglex(self.names.len())
    }

    fn gb(&self, rels: &[Polynomial]) -> Result<RewriteSystem> {
        complete_truncated(rels, &self.ord(), self.bound)
    }

    /// Step 1: monic, nonzero, no repeats, canonical order.
    fn normalize(&mut self) -> bool {
        let before = self.rels.len();
        let mut rels: Vec<Polynomial> = self.rels.iter().filter_map(monic).collect();
        rels.sort_by(cmp_polys);
        let mut out: Vec<Polynomial> = Vec::with_capacity(rels.len());
        for r in rels {
            if out.last() == Some(&r) {
                self.log.push(TietzeStep::DropDuplicate(out.len()));
            } else {
                out.push(r);
            }
        }
        self.rels = out;
        self.rels.len() != before
    }

    fn apply(&mut self, g: Letter, image: Polynomial) {
        let mut images: Vec<Option<Polynomial>> = vec![None; self.names.len()];
        images[g as usize] = Some(image);
        let shift = |w: &Word| {
            Some(Word::new(
                w.letters()
                    .iter()
                    .map(|&l| if l > g { l - 1 } else { l })
                    .collect(),
            ))
        };
        let map = |p: &Polynomial| p.substitute(&images).map_words(shift);
        self.rels = self.rels.iter().map(map).filter(|p| !p.is_zero()).collect();
        self.tracked = self.tracked.iter().map(map).collect();
        self.names.remove(g as usize);
        if let Some(par) = &mut self.parity {
            par.remove(g as usize);
        }
    }

    /// Step 2: a relation `g = 0`.
    fn delete_generator(&mut self) -> bool {
        let hit = self.rels.iter().find_map(|r| {
            let (w, c) = r.iter().next()?;
            (r.num_terms() == 1 && w.len() == 1 && c.is_one()).then(|| w.letters()[0])
        });
        match hit {
            Some(g) => {
                self.log
                    .push(TietzeStep::DeleteGenerator(self.names[g as usize].clone()));
                self.apply(g, Polynomial::zero());
                true
            }
            None => false,
        }
    }

    /// Candidate `g = P` from relation `r`: `g` occurs only as the
    /// degree-one term of `r`.
    fn solve_for(r: &Polynomial, g: Letter) -> Option<Polynomial> {
        let gw = Word::letter(g);
        let c = r.coefficient(&gw);
        if c.is_zero() {
            return None;
        }
        if r.words().any(|w| *w != gw && w.contains_letter(g)) {
            return None;
        }
        let mut rest = r.clone();
        rest.add_term(gw, -c.clone());
        Some(rest.scale(&-c.recip()))
    }

    /// Step 3: eliminate a generator defined by some relation, preferring
    /// low-degree definitions and then low generator index.
    fn eliminate(&mut self) -> bool {
        let mut cands: Vec<(usize, Letter, usize, Polynomial)> = Vec::new();
        for (i, r) in self.rels.iter().enumerate() {
            for g in 0..self.names.len() as Letter {
                if let Some(p) = Self::solve_for(r, g) {
                    let d = p.degree().unwrap_or(0);
                    if d <= self.bound {
                        cands.push((d, g, i, p));
                    }
                }
            }
        }
        cands.sort_by_key(|c| (c.0, c.1, c.2));
        for (_, g, _, p) in cands {
            let mut images: Vec<Option<Polynomial>> = vec![None; self.names.len()];
            images[g as usize] = Some(p.clone());
            let fits = self
                .rels
                .iter()
                .all(|r| r.substitute(&images).degree().unwrap_or(0) <= self.bound);
            if fits {
                self.log
                    .push(TietzeStep::Eliminate(self.names[g as usize].clone()));
                self.apply(g, p);
                return true;
            }
        }
        false
    }

    /// Step 4: drop relations implied by the others, latest first.
    fn drop_redundant(&mut self) -> Result<bool> {
        let mut changed = false;
        let mut i = self.rels.len();
        while i > 0 {
            i -= 1;
            let others: Vec<Polynomial> = self
                .rels
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| r.clone())
                .collect();
            let rs = self.gb(&others)?;
            if rs.reduce(&self.rels[i]).is_zero() {
                self.rels.remove(i);
                self.log.push(TietzeStep::DropRedundant(i));
                changed = true;
            }
        }
        Ok(changed)
    }

    /// Step 5: a completed rule `g → rhs` with `g` a generator becomes the
    /// explicit relation `g - rhs`, which step 3 then eliminates.
    fn derive_definition(&mut self) -> Result<bool> {
        if self.rels.is_empty() {
            return Ok(false);
        }
        let rs = self.gb(&self.rels)?;
        if rs.is_degenerate() {
            return Ok(false);
        }
        let graded = self.rels.iter().all(parity_homogeneous);
        for rule in rs.rules() {
            if rule.lhs.len() != 1 {
                continue;
            }
            let mut rel = rule.poly();
            if graded {
                rel = rel.parity_part(Parity::Odd);
            }
            let rel = monic(&rel).expect("contains the generator");
            if self.rels.contains(&rel) {
                continue;
            }
            let g = rule.lhs.letters()[0];
            self.log.push(TietzeStep::Derive(self.names[g as usize].clone()));
            self.rels.push(rel);
            return Ok(true);
        }
        Ok(false)
    }

    fn run(&mut self) -> Result<()> {
        loop {
            self.normalize();
            if self.delete_generator() || self.eliminate() {
                continue;
            }
            if self.drop_redundant()? {
                continue;
            }
            if self.derive_definition()? {
                continue;
            }
            self.normalize();
            return Ok(());
        }
    }
}

/// Simplified presentation, the images of `tracked` in it, and the moves
/// performed. Schemas, idempotent and witnesses are not carried over.
pub fn tietze_simplify_tracked(
    p: &Presentation,
    max_deg: usize,
    tracked: &[Polynomial],
) -> Result<(Presentation, Vec<Polynomial>, Vec<TietzeStep>)> {
    let mut st = State {
        names: p.generators().to_vec(),
        parity: p.parity().map(<[Parity]>::to_vec),
        rels: p.relation_polys(),
        tracked: tracked.to_vec(),
        bound: max_deg.max(p.max_relation_degree()),
        log: Vec::new(),
    };
    st.run()?;
    let mut out = Presentation::new(st.names)?;
    out.set_parity(st.parity)?;
    for r in st.rels {
        out.push_relation(r)?;
    }
    Ok((out, st.tracked, st.log))
}

/// Deterministic Tietze simplification up to `max_deg`.
pub fn tietze_simplify(p: &Presentation, max_deg: usize) -> Result<Presentation> {
    Ok(tietze_simplify_tracked(p, max_deg, &[])?.0)
}
