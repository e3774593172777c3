//! Comparing presentations: graded dimension agreement, generator-map
//! homomorphism checks and Tietze simplification.

mod tietze;

use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::{MonomialOrder, Polynomial};
use crate::ncgb::{complete_truncated, hilbert_profile, ideal_member, Verdict};
use crate::presio::{format_polynomial, parse_polynomial, Presentation};

pub use tietze::{tietze_simplify, tietze_simplify_tracked, TietzeStep};

/// Images of the source generators, as polynomials over the target
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap {
    images: Vec<Polynomial>,
}

impl GeneratorMap {
    pub fn new(src: &Presentation, dst: &Presentation, images: Vec<Polynomial>) -> Result<GeneratorMap> {
        if images.len() != src.num_generators() {
            return Err(Error::InvalidPresentation(format!(
                "generator map has {} images for {} generators",
                images.len(),
                src.num_generators()
            )));
        }
        for img in &images {
            if let Some(l) = img.max_letter() {
                if l as usize >= dst.num_generators() {
                    return Err(Error::UndeclaredGenerator(format!("#{}", l + 1)));
                }
            }
        }
        Ok(GeneratorMap { images })
    }

    /// Parses `a = x*y, b = y^2, ...`; every source generator needs an
    /// image.
    pub fn parse(src: &Presentation, dst: &Presentation, text: &str) -> Result<GeneratorMap> {
        let mut images: Vec<Option<Polynomial>> = vec![None; src.num_generators()];
        for item in text.split([',', ';']).map(str::trim).filter(|s| !s.is_empty()) {
            let (name, rhs) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidPresentation(format!("map entry {item:?} lacks '='")))?;
            let name = name.trim();
            let g = src
                .generator_index(name)
                .ok_or_else(|| Error::UndeclaredGenerator(name.to_string()))?;
            if images[g as usize].is_some() {
                return Err(Error::DuplicateName(name.to_string()));
            }
            images[g as usize] = Some(parse_polynomial(dst, rhs)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| {
                img.ok_or_else(|| {
                    Error::InvalidPresentation(format!("no image for generator {}", src.name(i as u32)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GeneratorMap::new(src, dst, images)
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let images: Vec<Option<Polynomial>> = self.images.iter().cloned().map(Some).collect();
        p.substitute(&images)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivVerdict {
    ConsistentUpToDegree,
    Mismatch { degree: usize },
    Inconclusive,
}

impl EquivVerdict {
    pub fn exit_code(self) -> i32 {
        match self {
            EquivVerdict::ConsistentUpToDegree => 0,
            EquivVerdict::Mismatch { .. } => 1,
            EquivVerdict::Inconclusive => 3,
        }
    }
}

impl fmt::Display for EquivVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivVerdict::ConsistentUpToDegree => f.write_str("consistent-up-to-degree"),
            EquivVerdict::Mismatch { degree } => write!(f, "mismatch at degree {degree}"),
            EquivVerdict::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

/// `first` is the dimension of the first presentation at `ratio * degree`,
/// `second` that of the second presentation at `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: usize,
    pub first: u128,
    pub second: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipRow {
    pub relation: String,
    pub image: String,
    pub degree: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub degree_bound: usize,
    pub ratio: usize,
    pub rows: Vec<DegreeRow>,
    pub memberships: Vec<MembershipRow>,
    pub exact: bool,
    pub verdict: EquivVerdict,
}

/// Compares `dims(p2)[d]` with `dims(p1)[ratio * d]` for `d <= max_d`.
pub fn compare_hilbert(
    p1: &Presentation,
    p2: &Presentation,
    max_d: usize,
    ratio: usize,
) -> Result<EquivalenceReport> {
    if ratio == 0 {
        return Err(Error::InvalidPresentation("ratio must be at least 1".into()));
    }
    let d1 = ratio * max_d;
    let rs1 = complete_truncated(&p1.relation_polys(), &p1.default_order(), d1)?;
    let rs2 = complete_truncated(&p2.relation_polys(), &p2.default_order(), max_d)?;
    let h1 = hilbert_profile(&rs1, d1)?;
    let h2 = hilbert_profile(&rs2, max_d)?;
    let exact = h1.exact && h2.exact;
    let rows: Vec<DegreeRow> = (0..=max_d)
        .map(|d| DegreeRow {
            degree: d,
            first: h1.dims[ratio * d],
            second: h2.dims[d],
        })
        .collect();
    let verdict = match (rows.iter().find(|r| r.first != r.second), exact) {
        (_, false) => EquivVerdict::Inconclusive,
        (Some(r), true) => EquivVerdict::Mismatch { degree: r.degree },
        (None, true) => EquivVerdict::ConsistentUpToDegree,
    };
    Ok(EquivalenceReport {
        degree_bound: max_d,
        ratio,
        rows,
        memberships: Vec::new(),
        exact,
        verdict,
    })
}

/// Tests whether every source relation maps into the ideal of `dst`.
pub fn check_generator_map(
    src: &Presentation,
    dst: &Presentation,
    gm: &GeneratorMap,
    max_deg: usize,
) -> Result<EquivalenceReport> {
    let rs = complete_truncated(&dst.relation_polys(), &dst.default_order(), max_deg)?;
    let src_ord = src.default_order();
    let dst_ord: MonomialOrder = dst.default_order();
    let mut memberships = Vec::new();
    for r in src.relations() {
        let img = gm.apply(r.poly());
        let degree = img.degree().unwrap_or(0);
        let verdict = ideal_member(&img, &rs)?;
        memberships.push(MembershipRow {
            relation: format_polynomial(r.poly(), src.generators(), &src_ord),
            image: format_polynomial(&img, dst.generators(), &dst_ord),
            degree,
            verdict,
        });
    }
    let failing = memberships
        .iter()
        .filter(|m| m.verdict == Verdict::NonMemberUpToDegree)
        .map(|m| m.degree)
        .min();
    let verdict = if let Some(degree) = failing {
        EquivVerdict::Mismatch { degree }
    } else if memberships.iter().all(|m| m.verdict == Verdict::Member) {
        EquivVerdict::ConsistentUpToDegree
    } else {
        EquivVerdict::Inconclusive
    };
    Ok(EquivalenceReport {
        degree_bound: max_deg,
        ratio: 1,
        rows: Vec::new(),
        memberships,
        exact: rs.exact(),
        verdict,
    })
}

/// Outcome of comparing two presentations of (supposedly) the same
/// algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimensionCheck {
    /// Both graded and the profiles agree up to the bound.
    ProfilePreserved,
    ProfileChanged {
        degree: usize,
    },
    /// Both finite-dimensional with full Gröbner bases and equal dimension.
    TotalPreserved(u128),
    TotalChanged(u128, u128),
    /// Neither comparison applies at this bound.
    Undecided,
}

impl DimensionCheck {
    pub fn is_preserved(&self) -> bool {
        matches!(
            self,
            DimensionCheck::ProfilePreserved | DimensionCheck::TotalPreserved(_)
        )
    }
}

impl fmt::Display for DimensionCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimensionCheck::ProfilePreserved => f.write_str("hilbert-preserved"),
            DimensionCheck::ProfileChanged { degree } => write!(f, "hilbert-changed at degree {degree}"),
            DimensionCheck::TotalPreserved(n) => write!(f, "dimension-preserved ({n})"),
            DimensionCheck::TotalChanged(a, b) => write!(f, "dimension-changed ({a} vs {b})"),
            DimensionCheck::Undecided => f.write_str("undecided"),
        }
    }
}

/// Compares Hilbert profiles up to `max_d` when both presentations are
/// homogeneous, and total dimensions when both are finite-dimensional
/// with saturated systems.
pub fn dimension_check(p1: &Presentation, p2: &Presentation, max_d: usize) -> Result<DimensionCheck> {
    let run = |p: &Presentation| -> Result<(Vec<u128>, bool)> {
        let rs = complete_truncated(
            &p.relation_polys(),
            &p.default_order(),
            max_d.max(p.max_relation_degree()),
        )?;
        let h = hilbert_profile(&rs, max_d)?;
        Ok((h.dims, rs.is_saturated()))
    };
    let (h1, c1) = run(p1)?;
    let (h2, c2) = run(p2)?;
    if p1.is_homogeneous() && p2.is_homogeneous() {
        return Ok(match (0..=max_d).find(|&d| h1[d] != h2[d]) {
            Some(degree) => DimensionCheck::ProfileChanged { degree },
            None => DimensionCheck::ProfilePreserved,
        });
    }
    // normal words are closed under factors, so a zero count is final
    let finite = |h: &[u128]| h.last() == Some(&0);
    if c1 && c2 && finite(&h1) && finite(&h2) {
        let (a, b) = (h1.iter().sum(), h2.iter().sum());
        return Ok(if a == b {
            DimensionCheck::TotalPreserved(a)
        } else {
            DimensionCheck::TotalChanged(a, b)
        });
    }
    Ok(DimensionCheck::Undecided)
}

#[cfg(test)]
mod tests;
