//! Presentations and the `.fpa` text format.

mod parse;
mod print;

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freealg::{Letter, MonomialOrder, Parity, Polynomial, Scalar, Word};

pub use parse::{parse_polynomial, parse_presentation};
pub use print::{format_polynomial, format_word, print_canonical};

pub(crate) const KEYWORDS: &[&str] = &[
    "gens",
    "odd",
    "even",
    "rel",
    "schema",
    "for",
    "idempotent",
    "witness",
];

/// A defining relation `value = 0`, stored monic under the default
/// degree-lexicographic order of the presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation(Polynomial);

impl Relation {
    pub fn new(p: Polynomial) -> Result<Relation> {
        match p.terms().iter().next_back() {
            None => Err(Error::ZeroRelation),
            Some((_, c)) => {
                let inv = c.recip();
                Ok(Relation(p.scale(&inv)))
            }
        }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_poly(self) -> Polynomial {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap_or(0)
    }

    pub fn leading_word(&self) -> &Word {
        self.0.terms().keys().next_back().expect("relations are nonzero")
    }
}

/// `slope * i + offset` in the schema parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineExponent {
    pub slope: i64,
    pub offset: i64,
}

impl AffineExponent {
    pub fn constant(n: i64) -> AffineExponent {
        AffineExponent { slope: 0, offset: n }
    }

    pub fn eval(&self, i: i64) -> i64 {
        self.slope * i + self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchemaTerm {
    pub coefficient: Scalar,
    pub factors: Vec<(Letter, AffineExponent)>,
}

impl SchemaTerm {
    fn degree_at(&self, i: i64) -> i64 {
        self.factors.iter().map(|(_, e)| e.eval(i)).sum()
    }
}

/// A one-parameter family of relations `pattern(i) = 0` for `i >= lower`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationSchema {
    pub parameter: String,
    pub terms: Vec<SchemaTerm>,
    pub lower: i64,
}

impl RelationSchema {
    pub fn new(parameter: String, terms: Vec<SchemaTerm>, lower: i64) -> Result<RelationSchema> {
        let s = RelationSchema {
            parameter,
            terms,
            lower,
        };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        if self.terms.is_empty() {
            return Err(Error::MalformedSchema("empty pattern".into()));
        }
        for t in &self.terms {
            for (_, e) in &t.factors {
                if e.slope < 0 {
                    return Err(Error::MalformedSchema(format!(
                        "exponent {}*{}+{} decreases in {}",
                        e.slope, self.parameter, e.offset, self.parameter
                    )));
                }
                if e.eval(self.lower) < 0 {
                    return Err(Error::MalformedSchema(format!(
                        "negative exponent at {} = {}",
                        self.parameter, self.lower
                    )));
                }
            }
        }
        // Degree is a maximum of affine functions, hence convex in i; one
        // strict step at the lower bound makes it strictly increasing.
        if self.degree_at(self.lower + 1) <= self.degree_at(self.lower) {
            return Err(Error::MalformedSchema(
                "instantiated degree must increase with the parameter".into(),
            ));
        }
        if self.instantiate(self.lower).is_zero() {
            return Err(Error::MalformedSchema(
                "instantiation is the zero polynomial".into(),
            ));
        }
        Ok(())
    }

    pub fn degree_at(&self, i: i64) -> i64 {
        self.terms.iter().map(|t| t.degree_at(i)).max().unwrap_or(0)
    }

    pub fn instantiate(&self, i: i64) -> Polynomial {
        let mut p = Polynomial::zero();
        for t in &self.terms {
            let mut letters = Vec::new();
            for &(g, e) in &t.factors {
                let k = e.eval(i).max(0) as usize;
                letters.extend(std::iter::repeat_n(g, k));
            }
            p.add_term(Word::new(letters), t.coefficient.clone());
        }
        p
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.terms
            .iter()
            .flat_map(|t| t.factors.iter().map(|(g, _)| *g))
            .max()
    }
}

/// Which Peirce side a fullness witness sandwiches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// the idempotent `e`
    E,
    /// the complement `f = 1 - e`
    F,
}

/// Fullness certificate `1 = Σ u_i · s · v_i` with `s = e` or `s = 1 - e`.
///
/// Terms are kept expanded into monomial pairs `(c·u, v)`; on the `e` side
/// the split is taken at the first occurrence of `e` in `u·e·v`, which makes
/// the stored form canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WitnessDecomposition {
    pub side: Side,
    terms: Vec<(Polynomial, Polynomial)>,
}

impl WitnessDecomposition {
    pub fn new(
        side: Side,
        terms: Vec<(Polynomial, Polynomial)>,
        idempotent: Letter,
    ) -> Result<WitnessDecomposition> {
        let mut acc: BTreeMap<(Word, Word), Scalar> = BTreeMap::new();
        for (u, v) in &terms {
            for (wu, cu) in u.iter() {
                for (wv, cv) in v.iter() {
                    let (a, b) = match side {
                        Side::E => {
                            let full = Word::concat3(wu.letters(), &[idempotent], wv.letters());
                            let pos = full.find_factor(&[idempotent]).expect("contains e");
                            (
                                Word::from(&full.letters()[..pos]),
                                Word::from(&full.letters()[pos + 1..]),
                            )
                        }
                        Side::F => (wu.clone(), wv.clone()),
                    };
                    let slot = acc.entry((a, b)).or_insert_with(Scalar::zero);
                    *slot += cu * cv;
                }
            }
        }
        let terms: Vec<_> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((a, b), c)| (Polynomial::monomial(a, c), Polynomial::word(b)))
            .collect();
        if terms.is_empty() {
            return Err(Error::EmptyWitness);
        }
        Ok(WitnessDecomposition { side, terms })
    }

    pub fn terms(&self) -> &[(Polynomial, Polynomial)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ u_i · s · v_i` for a given polynomial `s`.
    pub fn expand(&self, sandwiched: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (u, v) in &self.terms {
            out.add_scaled(&u.mul(sandwiched).mul(v), &Scalar::one());
        }
        out
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.terms
            .iter()
            .flat_map(|(u, v)| [u.max_letter(), v.max_letter()])
            .flatten()
            .max()
    }

    pub fn degree(&self) -> usize {
        self.terms
            .iter()
            .map(|(u, v)| u.degree().unwrap_or(0) + v.degree().unwrap_or(0) + 1)
            .max()
            .unwrap_or(0)
    }
}

/// Generators, relations and the optional grading/idempotent metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    parity: Option<Vec<Parity>>,
    relations: Vec<Relation>,
    schemas: Vec<RelationSchema>,
    idempotent: Option<Letter>,
    witness_e: Option<WitnessDecomposition>,
    witness_f: Option<WitnessDecomposition>,
}

impl Presentation {
    pub fn new(generators: Vec<String>) -> Result<Presentation> {
        let p = Presentation {
            generators,
            parity: None,
            relations: Vec::new(),
            schemas: Vec::new(),
            idempotent: None,
            witness_e: None,
            witness_f: None,
        };
        p.validate()?;
        Ok(p)
    }

    /// Convenience constructor from names and relation polynomials.
    pub fn from_parts<S: Into<String>>(
        generators: impl IntoIterator<Item = S>,
        relations: impl IntoIterator<Item = Polynomial>,
    ) -> Result<Presentation> {
        let mut p = Presentation::new(generators.into_iter().map(Into::into).collect())?;
        for r in relations {
            p.push_relation(r)?;
        }
        Ok(p)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<Letter> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| i as Letter)
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.generators[l as usize]
    }

    pub fn parity(&self) -> Option<&[Parity]> {
        self.parity.as_deref()
    }

    /// Parity of a generator; presentations without a parity declaration
    /// treat every generator as odd.
    pub fn generator_parity(&self, l: Letter) -> Parity {
        self.parity.as_ref().map(|p| p[l as usize]).unwrap_or(Parity::Odd)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation_polys(&self) -> Vec<Polynomial> {
        self.relations.iter().map(|r| r.poly().clone()).collect()
    }

    pub fn schemas(&self) -> &[RelationSchema] {
        &self.schemas
    }

    pub fn idempotent(&self) -> Option<Letter> {
        self.idempotent
    }

    pub fn witness(&self, side: Side) -> Option<&WitnessDecomposition> {
        match side {
            Side::E => self.witness_e.as_ref(),
            Side::F => self.witness_f.as_ref(),
        }
    }

    pub fn default_order(&self) -> MonomialOrder {
        MonomialOrder::deglex(self.generators.len())
    }

    /// All relations are length-homogeneous (schemas included).
    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| r.poly().is_homogeneous())
            && self.schemas.iter().all(|s| {
                let lens: HashSet<i64> = s.terms.iter().map(|t| t.degree_at(s.lower)).collect();
                let lens1: HashSet<i64> = s.terms.iter().map(|t| t.degree_at(s.lower + 1)).collect();
                lens.len() <= 1 && lens1.len() <= 1
            })
    }

    pub fn max_relation_degree(&self) -> usize {
        self.relations.iter().map(Relation::degree).max().unwrap_or(0)
    }

    pub fn push_relation(&mut self, p: Polynomial) -> Result<()> {
        self.check_letters(&p)?;
        self.relations.push(Relation::new(p)?);
        Ok(())
    }

    /// Like [`push_relation`](Self::push_relation) but silently ignores zero
    /// polynomials and exact duplicates.
    pub fn push_relation_dedup(&mut self, p: Polynomial) -> Result<bool> {
        if p.is_zero() {
            return Ok(false);
        }
        self.check_letters(&p)?;
        let r = Relation::new(p)?;
        if self.relations.contains(&r) {
            return Ok(false);
        }
        self.relations.push(r);
        Ok(true)
    }

    pub fn set_relations(&mut self, rels: Vec<Relation>) -> Result<()> {
        for r in &rels {
            self.check_letters(r.poly())?;
        }
        self.relations = rels;
        Ok(())
    }

    pub fn push_schema(&mut self, s: RelationSchema) -> Result<()> {
        if let Some(l) = s.max_letter() {
            self.check_letter(l)?;
        }
        self.schemas.push(s);
        Ok(())
    }

    pub fn set_parity(&mut self, parity: Option<Vec<Parity>>) -> Result<()> {
        if let Some(p) = &parity {
            if p.len() != self.generators.len() {
                return Err(Error::InvalidPresentation(
                    "parity assignment must cover every generator".into(),
                ));
            }
        }
        self.parity = parity;
        Ok(())
    }

    pub fn set_idempotent(&mut self, e: Option<Letter>) -> Result<()> {
        if let Some(l) = e {
            self.check_letter(l)?;
        }
        self.idempotent = e;
        if e.is_none() {
            self.witness_e = None;
            self.witness_f = None;
        }
        Ok(())
    }

    pub fn set_witness(&mut self, w: Option<WitnessDecomposition>, side: Side) -> Result<()> {
        if let Some(w) = &w {
            if self.idempotent.is_none() {
                return Err(Error::MissingIdempotent);
            }
            if w.side != side {
                return Err(Error::InvalidPresentation("witness side mismatch".into()));
            }
            if let Some(l) = w.max_letter() {
                self.check_letter(l)?;
            }
            if side == Side::F && self.generators.iter().any(|g| g == "f") {
                return Err(Error::DuplicateName("f (reserved for 1 - e in witness f)".into()));
            }
        }
        match side {
            Side::E => self.witness_e = w,
            Side::F => self.witness_f = w,
        }
        Ok(())
    }

    /// Drops schemas, idempotent and witnesses, keeping generators, parity
    /// and relations.
    pub fn plain(&self) -> Presentation {
        Presentation {
            generators: self.generators.clone(),
            parity: self.parity.clone(),
            relations: self.relations.clone(),
            schemas: Vec::new(),
            idempotent: None,
            witness_e: None,
            witness_f: None,
        }
    }

    fn check_letter(&self, l: Letter) -> Result<()> {
        if (l as usize) < self.generators.len() {
            Ok(())
        } else {
            Err(Error::UndeclaredGenerator(format!("#{}", l + 1)))
        }
    }

    fn check_letters(&self, p: &Polynomial) -> Result<()> {
        match p.max_letter() {
            Some(l) => self.check_letter(l),
            None => Ok(()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for g in &self.generators {
            if !is_identifier(g) || KEYWORDS.contains(&g.as_str()) {
                return Err(Error::InvalidPresentation(format!(
                    "invalid generator name {g:?}"
                )));
            }
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateName(g.clone()));
            }
        }
        for r in &self.relations {
            self.check_letters(r.poly())?;
        }
        if let Some(p) = &self.parity {
            if p.len() != self.generators.len() {
                return Err(Error::InvalidPresentation(
                    "parity assignment must cover every generator".into(),
                ));
            }
        }
        if let Some(e) = self.idempotent {
            self.check_letter(e)?;
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Replaces every schema by its instantiations of total degree at most
/// `max_deg`, in increasing parameter order.
pub fn expand_schemas(p: &Presentation, max_deg: usize) -> Presentation {
    let mut out = p.clone();
    out.schemas.clear();
    for s in &p.schemas {
        let mut i = s.lower;
        while s.degree_at(i) <= max_deg as i64 {
            let inst = s.instantiate(i);
            out.push_relation_dedup(inst)
                .expect("schema letters were validated");
            i += 1;
        }
    }
    out
}
