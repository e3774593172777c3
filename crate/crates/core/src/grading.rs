//! Parity bookkeeping and the even-part transformer: from a presentation
//! on odd generators `x_1..x_m` to a presentation of its even subalgebra on
//! the `m^2` pair generators `y_ij = x_i x_j`.

use crate::equiv::{tietze_simplify, GeneratorMap};
use crate::error::{Error, Result};
use crate::freealg::{pair_encode_poly, Letter, PairIndex, Parity, Polynomial, Word};
use crate::presio::{expand_schemas, Presentation, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityAssignment {
    parities: Vec<Parity>,
}

impl ParityAssignment {
    pub fn new(parities: Vec<Parity>) -> ParityAssignment {
        ParityAssignment { parities }
    }

    pub fn all_odd(m: usize) -> ParityAssignment {
        ParityAssignment::new(vec![Parity::Odd; m])
    }

    pub fn of(p: &Presentation) -> ParityAssignment {
        ParityAssignment::new(
            (0..p.num_generators() as Letter)
                .map(|l| p.generator_parity(l))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.parities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parities.is_empty()
    }

    pub fn generator(&self, l: Letter) -> Parity {
        self.parities[l as usize]
    }

    pub fn word(&self, w: &Word) -> Parity {
        w.letters()
            .iter()
            .fold(Parity::Even, |acc, &l| acc + self.generator(l))
    }

    pub fn component(&self, p: &Polynomial, parity: Parity) -> Polynomial {
        p.map_words(|w| (self.word(w) == parity).then(|| w.clone()))
    }

    /// First even generator, if any.
    pub fn first_even(&self) -> Option<Letter> {
        self.parities
            .iter()
            .position(|&p| p == Parity::Even)
            .map(|i| i as Letter)
    }
}

/// Relations split into their even (`even`) and odd (`odd`) components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitRelations {
    pub even: Vec<Relation>,
    pub odd: Vec<Relation>,
}

pub fn split_by_parity(rels: &[Relation], pa: &ParityAssignment) -> SplitRelations {
    let mut out = SplitRelations::default();
    for r in rels {
        for (parity, bucket) in [(Parity::Even, &mut out.even), (Parity::Odd, &mut out.odd)] {
            if let Ok(part) = Relation::new(pa.component(r.poly(), parity)) {
                if !bucket.contains(&part) {
                    bucket.push(part);
                }
            }
        }
    }
    out
}

fn require_odd(names: &[String], pa: &ParityAssignment) -> Result<()> {
    match pa.first_even() {
        Some(l) => Err(Error::EvenGenerator(names[l as usize].clone())),
        None => Ok(()),
    }
}

/// `{a} ∪ {x_i b} ∪ {b x_i} ∪ {x_i a x_j}` for `a` even and `b` odd,
/// monic and without repeats.
pub fn build_mprime(
    split: &SplitRelations,
    names: &[String],
    pa: &ParityAssignment,
) -> Result<Vec<Relation>> {
    require_odd(names, pa)?;
    let m = names.len() as Letter;
    let mut out: Vec<Relation> = Vec::new();
    let mut push = |p: Polynomial| {
        let r = Relation::new(p).expect("products of nonzero relations are nonzero");
        if !out.contains(&r) {
            out.push(r);
        }
    };
    for a in &split.even {
        push(a.poly().clone());
    }
    for b in &split.odd {
        for i in 0..m {
            push(b.poly().sandwich(&[i], &[]));
        }
        for i in 0..m {
            push(b.poly().sandwich(&[], &[i]));
        }
    }
    for a in &split.even {
        for i in 0..m {
            for j in 0..m {
                push(a.poly().sandwich(&[i], &[j]));
            }
        }
    }
    Ok(out)
}

/// Name of `y_ij` (1-based indices), with an underscore separator once
/// indices can have two digits.
pub fn pair_name(m: usize, pair: PairIndex) -> String {
    let (i, j) = (pair.left + 1, pair.right + 1);
    if m >= 10 {
        format!("y{i}_{j}")
    } else {
        format!("y{i}{j}")
    }
}

/// Inverse of [`pair_name`].
pub fn pair_of_name(m: usize, name: &str) -> Option<PairIndex> {
    PairIndex::all(m).find(|&p| pair_name(m, p) == name)
}

/// Truncation degree on the pair side that covers every encoded `M′`
/// element when the source is truncated at `max_deg`.
pub fn pair_degree_bound(max_deg: usize) -> usize {
    max_deg.div_ceil(2) + 1
}

fn raw_even_part(p: &Presentation, max_deg: usize) -> Result<Presentation> {
    let pa = ParityAssignment::of(p);
    require_odd(p.generators(), &pa)?;
    let expanded = expand_schemas(p, max_deg);
    let m = p.num_generators();
    let split = split_by_parity(expanded.relations(), &pa);
    let mprime = build_mprime(&split, p.generators(), &pa)?;
    let mut out = Presentation::new(PairIndex::all(m).map(|q| pair_name(m, q)).collect())?;
    for r in &mprime {
        out.push_relation_dedup(pair_encode_poly(r.poly(), m)?)?;
    }
    Ok(out)
}

/// Presentation of the even subalgebra, after expanding schemas to
/// `max_deg`. With `simplify`, the result goes through
/// [`tietze_simplify`] at [`pair_degree_bound`].
pub fn even_part_presentation(p: &Presentation, max_deg: usize, simplify: bool) -> Result<Presentation> {
    let raw = raw_even_part(p, max_deg)?;
    if simplify {
        tietze_simplify(&raw, pair_degree_bound(max_deg))
    } else {
        Ok(raw)
    }
}

/// The encoding map `y_ij ↦ x_i x_j` from an even-part output (raw or
/// simplified) into its source.
pub fn pair_generator_map(y: &Presentation, x: &Presentation) -> Result<GeneratorMap> {
    let m = x.num_generators();
    let images = y
        .generators()
        .iter()
        .map(|name| {
            pair_of_name(m, name)
                .map(|q| Polynomial::word(Word::new(vec![q.left, q.right])))
                .ok_or_else(|| Error::UndeclaredGenerator(name.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    GeneratorMap::new(y, x, images)
}
