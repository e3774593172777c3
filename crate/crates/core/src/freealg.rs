//! Exact arithmetic in the free unital associative algebra over the rationals.
//!
//! Generators are identified by dense zero-based indices; a [`Word`] is a
//! sequence of such indices and the empty word is the unit. [`Polynomial`]
//! keeps its terms in a `BTreeMap` ordered by degree-lexicographic order on
//! the raw indices, which coincides with [`MonomialOrder::deglex`] for the
//! identity precedence.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field element. `BigRational` is always kept in lowest terms
/// with a positive denominator.
pub type Scalar = BigRational;

/// Zero-based generator index.
pub type Letter = u32;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_len(len: usize) -> Parity {
        if len.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// A monomial of the free algebra. Degree is the length.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn parity(&self) -> Parity {
        Parity::of_len(self.0.len())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn concat3(left: &[Letter], mid: &[Letter], right: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(left.len() + mid.len() + right.len());
        v.extend_from_slice(left);
        v.extend_from_slice(mid);
        v.extend_from_slice(right);
        Word(v)
    }

    pub fn contains_letter(&self, l: Letter) -> bool {
        self.0.contains(&l)
    }

    /// Leftmost position at which `factor` occurs.
    pub fn find_factor(&self, factor: &[Letter]) -> Option<usize> {
        if factor.is_empty() {
            return Some(0);
        }
        if factor.len() > self.0.len() {
            return None;
        }
        self.0.windows(factor.len()).position(|w| w == factor)
    }

    pub fn has_factor(&self, factor: &[Letter]) -> bool {
        self.find_factor(factor).is_some()
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.0.iter().copied().max()
    }
}

impl std::borrow::Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree-lexicographic order with a configurable generator precedence.
///
/// `rank[g]` is the position of generator `g` in the precedence list, so the
/// generator with rank 0 is the smallest letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    rank: Vec<Letter>,
    by_rank: Vec<Letter>,
}

impl MonomialOrder {
    /// Identity precedence: generator 0 < generator 1 < ...
    pub fn deglex(num_generators: usize) -> MonomialOrder {
        let rank: Vec<Letter> = (0..num_generators as Letter).collect();
        MonomialOrder {
            by_rank: rank.clone(),
            rank,
        }
    }

    /// `precedence` lists generators from smallest to largest.
    pub fn with_precedence(precedence: &[Letter]) -> Result<MonomialOrder> {
        let n = precedence.len();
        let mut rank = vec![Letter::MAX; n];
        for (pos, &g) in precedence.iter().enumerate() {
            let slot = rank
                .get_mut(g as usize)
                .ok_or_else(|| Error::InvalidOrder(format!("generator index {g} out of range")))?;
            if *slot != Letter::MAX {
                return Err(Error::InvalidOrder(format!("generator index {g} repeated")));
            }
            *slot = pos as Letter;
        }
        Ok(MonomialOrder {
            rank,
            by_rank: precedence.to_vec(),
        })
    }

    pub fn num_generators(&self) -> usize {
        self.rank.len()
    }

    pub fn precedence(&self) -> &[Letter] {
        &self.by_rank
    }

    pub fn is_identity(&self) -> bool {
        self.rank.iter().enumerate().all(|(i, &r)| i as Letter == r)
    }

    pub fn rank_of(&self, l: Letter) -> Letter {
        self.rank[l as usize]
    }

    pub fn compare(&self, w1: &Word, w2: &Word) -> Ordering {
        w1.len().cmp(&w2.len()).then_with(|| {
            for (a, b) in w1.0.iter().zip(&w2.0) {
                match self.rank[*a as usize].cmp(&self.rank[*b as usize]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Relabels letters by rank, so that the natural word order of the result
    /// agrees with this order on the input.
    pub fn to_ranked(&self, w: &Word) -> Word {
        Word(w.0.iter().map(|&l| self.rank[l as usize]).collect())
    }

    pub fn from_ranked(&self, w: &Word) -> Word {
        Word(w.0.iter().map(|&r| self.by_rank[r as usize]).collect())
    }

    pub fn poly_to_ranked(&self, p: &Polynomial) -> Polynomial {
        if self.is_identity() {
            return p.clone();
        }
        Polynomial::from_terms(p.iter().map(|(w, c)| (self.to_ranked(w), c.clone())))
    }

    pub fn poly_from_ranked(&self, p: &Polynomial) -> Polynomial {
        if self.is_identity() {
            return p.clone();
        }
        Polynomial::from_terms(p.iter().map(|(w, c)| (self.from_ranked(w), c.clone())))
    }
}

/// Total degree-lexicographic comparison of two words.
pub fn compare_words(w1: &Word, w2: &Word, ord: &MonomialOrder) -> Ordering {
    ord.compare(w1, w2)
}

/// Finite linear combination of words with nonzero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Word, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Polynomial {
        Polynomial::monomial(Word::empty(), c)
    }

    pub fn monomial(w: Word, c: Scalar) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Polynomial { terms }
    }

    pub fn word(w: Word) -> Polynomial {
        Polynomial::monomial(w, Scalar::one())
    }

    pub fn letter(l: Letter) -> Polynomial {
        Polynomial::word(Word::letter(l))
    }

    /// Sums duplicate words and drops zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(terms: I) -> Polynomial {
        let mut p = Polynomial::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Word::len);
        match lens.next() {
            None => true,
            Some(first) => lens.all(|l| l == first),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Word::is_empty)
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.terms.keys().filter_map(Word::max_letter).max()
    }

    pub fn mentions(&self, l: Letter) -> bool {
        self.terms.keys().any(|w| w.contains_letter(l))
    }

    /// Computes `self + c * q`.
    pub fn combine(&self, q: &Polynomial, c: &Scalar) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(q, c);
        out
    }

    pub fn add_scaled(&mut self, q: &Polynomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &q.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    pub fn mul(&self, q: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &q.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// `left * self * right` for words.
    pub fn sandwich(&self, left: &[Letter], right: &[Letter]) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (Word::concat3(left, w.letters(), right), c.clone()))
                .collect(),
        }
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(&Word, &Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.compare(a.0, b.0))
            .ok_or(Error::NoLeadingTerm)
    }

    pub fn leading_word(&self, ord: &MonomialOrder) -> Option<&Word> {
        self.leading_term(ord).ok().map(|(w, _)| w)
    }

    /// Scales so that the leading coefficient is one. Zero stays zero.
    pub fn monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            Ok((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            Err(_) => Polynomial::zero(),
        }
    }

    /// Terms sorted from the order-largest word down.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(&Word, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.compare(b.0, a.0));
        v
    }

    pub fn parity_part(&self, parity: Parity) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.parity() == parity)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Parity under a letter-wise assignment; `None` if terms disagree.
    pub fn homogeneous_parity(&self, letter_parity: impl Fn(Letter) -> Parity) -> Option<Parity> {
        let mut seen = None;
        for w in self.terms.keys() {
            let p = word_parity_with(w, &letter_parity);
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        seen
    }

    /// Algebra homomorphism from the free algebra: letter `g` goes to
    /// `images[g]`. Letters without an image are kept unchanged.
    pub fn substitute(&self, images: &[Option<Polynomial>]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (w, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            for &l in w.letters() {
                match images.get(l as usize).and_then(Option::as_ref) {
                    Some(img) => acc = acc.mul(img),
                    None => acc = acc.mul(&Polynomial::letter(l)),
                }
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, &Scalar::one());
        }
        out
    }

    pub fn map_words(&self, mut f: impl FnMut(&Word) -> Option<Word>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (w, c) in &self.terms {
            if let Some(nw) = f(w) {
                out.add_term(nw, c.clone());
            }
        }
        out
    }
}

fn word_parity_with(w: &Word, letter_parity: &impl Fn(Letter) -> Parity) -> Parity {
    w.letters()
        .iter()
        .fold(Parity::Even, |acc, &l| acc + letter_parity(l))
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, &Scalar::one())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, &-Scalar::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

pub fn poly_combine(p: &Polynomial, q: &Polynomial, c: &Scalar) -> Polynomial {
    p.combine(q, c)
}

pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p.mul(q)
}

pub fn leading_term(p: &Polynomial, ord: &MonomialOrder) -> Result<(Word, Scalar)> {
    p.leading_term(ord).map(|(w, c)| (w.clone(), c.clone()))
}

pub fn word_parity(w: &Word) -> Parity {
    w.parity()
}

/// Generator `y_{ij}` of the free even subalgebra, standing for `x_i x_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairIndex {
    pub left: Letter,
    pub right: Letter,
}

impl PairIndex {
    pub fn new(left: Letter, right: Letter) -> PairIndex {
        PairIndex { left, right }
    }

    /// Letter of the pair alphabet for an `m`-generator source.
    pub fn code(self, m: usize) -> Letter {
        self.left * m as Letter + self.right
    }

    pub fn from_code(code: Letter, m: usize) -> PairIndex {
        PairIndex {
            left: code / m as Letter,
            right: code % m as Letter,
        }
    }

    /// All `m^2` pairs in code order.
    pub fn all(m: usize) -> impl Iterator<Item = PairIndex> {
        (0..(m * m) as Letter).map(move |c| PairIndex::from_code(c, m))
    }
}

/// Pairs letters left to right: `x_{i1} x_{i2} ... ↦ y_{i1 i2} ...`.
pub fn pair_encode(w: &Word, m: usize) -> Result<Word> {
    if !w.len().is_multiple_of(2) {
        return Err(Error::OddWord);
    }
    Ok(Word(
        w.0.chunks_exact(2)
            .map(|c| PairIndex::new(c[0], c[1]).code(m))
            .collect(),
    ))
}

pub fn pair_decode(v: &Word, m: usize) -> Word {
    let mut out = Vec::with_capacity(2 * v.len());
    for &code in &v.0 {
        let p = PairIndex::from_code(code, m);
        out.push(p.left);
        out.push(p.right);
    }
    Word(out)
}

pub fn pair_encode_poly(p: &Polynomial, m: usize) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for (w, c) in p.iter() {
        out.add_term(pair_encode(w, m)?, c.clone());
    }
    Ok(out)
}

pub fn pair_decode_poly(p: &Polynomial, m: usize) -> Polynomial {
    p.map_words(|w| Some(pair_decode(w, m)))
}

pub fn is_nonneg_integer(c: &Scalar) -> bool {
    c.is_integer() && !c.is_negative()
}
