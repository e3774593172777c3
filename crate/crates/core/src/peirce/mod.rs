//! The corner `eAe` of an algebra with a full idempotent `e`.
//!
//! Pipeline: split every generator into its four Peirce components, build
//! an odd generating set `Ω` from the fullness witnesses, run the even-part
//! transformer on `Ω`, and cut the complementary summand away with the
//! single relation `f = 0`. Throughout, `f` stands for `1 - e` and is never
//! a generator.

use std::fmt;

use crate::equiv::tietze_simplify_tracked;
use crate::error::{Error, Result};
use crate::freealg::{pair_encode_poly, Letter, Parity, Polynomial, Word};
use crate::grading::{even_part_presentation, pair_degree_bound};
use crate::ncgb::{complete_truncated, ideal_member, Verdict};
use crate::presio::{Presentation, Side, WitnessDecomposition};

/// The designated idempotent generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdempotentSpec {
    pub generator: Letter,
}

impl IdempotentSpec {
    pub fn of(p: &Presentation) -> Result<IdempotentSpec> {
        p.idempotent()
            .map(|generator| IdempotentSpec { generator })
            .ok_or(Error::MissingIdempotent)
    }

    fn relation(&self) -> Polynomial {
        let e = self.generator;
        &Polynomial::word(Word::new(vec![e, e])) - &Polynomial::letter(e)
    }

    fn check(&self, p: &Presentation) -> Result<()> {
        let want = self.relation();
        if p.relations().iter().any(|r| *r.poly() == want) {
            Ok(())
        } else {
            Err(Error::MissingIdempotentRelation(
                p.name(self.generator).to_string(),
            ))
        }
    }
}

/// Left and right Peirce side of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PeirceType {
    pub left: Side,
    pub right: Side,
}

impl PeirceType {
    pub const fn new(left: Side, right: Side) -> PeirceType {
        PeirceType { left, right }
    }

    pub fn is_matched(self) -> bool {
        self.left == self.right
    }
}

impl fmt::Display for PeirceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |side| match side {
            Side::E => 'e',
            Side::F => 'f',
        };
        write!(f, "({},{})", s(self.left), s(self.right))
    }
}

const EE: PeirceType = PeirceType::new(Side::E, Side::E);
const EF: PeirceType = PeirceType::new(Side::E, Side::F);
const FE: PeirceType = PeirceType::new(Side::F, Side::E);
const FF: PeirceType = PeirceType::new(Side::F, Side::F);
const COMPONENTS: [(PeirceType, &str); 4] = [(EE, "ee"), (EF, "ef"), (FE, "fe"), (FF, "ff")];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessVerdict {
    Verified,
    Inconclusive(String),
}

impl fmt::Display for WitnessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessVerdict::Verified => f.write_str("verified"),
            WitnessVerdict::Inconclusive(why) => write!(f, "inconclusive ({why})"),
        }
    }
}

fn side_element(side: Side, e: &Polynomial) -> Polynomial {
    match side {
        Side::E => e.clone(),
        Side::F => &Polynomial::one() - e,
    }
}

/// Checks `1 = Σ u_i e v_i` and `1 = Σ s_j (1-e) t_j` by reduction in the
/// system completed up to `max_deg`. A nonzero normal form only makes the
/// verdict inconclusive.
pub fn verify_witnesses(
    p: &Presentation,
    spec: IdempotentSpec,
    w_e: &WitnessDecomposition,
    w_f: &WitnessDecomposition,
    max_deg: usize,
) -> Result<WitnessVerdict> {
    spec.check(p)?;
    let e = Polynomial::letter(spec.generator);
    let mut exprs = Vec::new();
    for w in [w_e, w_f] {
        let expr = &Polynomial::one() - &w.expand(&side_element(w.side, &e));
        let d = expr.degree().unwrap_or(0);
        if d > max_deg {
            return Err(Error::DegreeExceedsTruncation {
                degree: d,
                bound: max_deg,
            });
        }
        exprs.push((w.side, expr));
    }
    let bound = max_deg.max(p.max_relation_degree());
    let rs = complete_truncated(&p.relation_polys(), &p.default_order(), bound)?;
    for (side, expr) in exprs {
        if !rs.reduce(&expr).is_zero() {
            let s = match side {
                Side::E => "1 - Σ u e v",
                Side::F => "1 - Σ s (1-e) t",
            };
            return Ok(WitnessVerdict::Inconclusive(format!(
                "{s} does not reduce to 0 at degree {bound}"
            )));
        }
    }
    Ok(WitnessVerdict::Verified)
}

/// Presentation on the typed generators `ε, g_ee, g_ef, g_fe, g_ff`.
#[derive(Clone, Debug)]
pub struct Homogenized {
    pub presentation: Presentation,
    pub types: Vec<PeirceType>,
    /// `ε`, always letter 0
    pub epsilon: Letter,
    /// Image of each original generator (`e ↦ ε`, `g ↦ Σ g_pq`).
    pub images: Vec<Polynomial>,
    /// Original generator and component of each typed generator other than
    /// `ε`.
    pub origins: Vec<Option<(Letter, PeirceType)>>,
}

impl Homogenized {
    pub fn substitute(&self, p: &Polynomial) -> Polynomial {
        let images: Vec<Option<Polynomial>> = self.images.iter().cloned().map(Some).collect();
        p.substitute(&images)
    }

    /// `ε` for side `e`, `1 - ε` for side `f`.
    pub fn side(&self, side: Side) -> Polynomial {
        side_element(side, &Polynomial::letter(self.epsilon))
    }
}

pub fn peirce_homogenize(p: &Presentation, spec: IdempotentSpec) -> Result<Homogenized> {
    spec.check(p)?;
    let e = spec.generator;
    let mut names = vec![p.name(e).to_string()];
    let mut types = vec![EE];
    let mut origins = vec![None];
    let mut images = vec![Polynomial::zero(); p.num_generators()];
    images[e as usize] = Polynomial::letter(0);
    for g in 0..p.num_generators() as Letter {
        if g == e {
            continue;
        }
        let mut img = Polynomial::zero();
        for (ty, suffix) in COMPONENTS {
            img = &img + &Polynomial::letter(names.len() as Letter);
            names.push(format!("{}_{suffix}", p.name(g)));
            types.push(ty);
            origins.push(Some((g, ty)));
        }
        images[g as usize] = img;
    }
    let mut out = Presentation::new(names)?;
    let eps = Polynomial::letter(0);
    let h = Homogenized {
        presentation: out.clone(),
        types: types.clone(),
        epsilon: 0,
        images,
        origins,
    };
    for r in p.relations() {
        out.push_relation_dedup(h.substitute(r.poly()))?;
    }
    for (l, ty) in types.iter().enumerate().skip(1) {
        let z = Polynomial::letter(l as Letter);
        for (left, prod) in [(true, eps.mul(&z)), (false, z.mul(&eps))] {
            let side = if left { ty.left } else { ty.right };
            let rel = match side {
                Side::E => &prod - &z,
                Side::F => prod,
            };
            out.push_relation_dedup(rel)?;
        }
    }
    Ok(Homogenized {
        presentation: out,
        ..h
    })
}

/// The presentation on `Ω` together with the bookkeeping that relates it to
/// the homogenized presentation.
#[derive(Clone, Debug)]
pub struct OddGenerated {
    pub presentation: Presentation,
    pub types: Vec<PeirceType>,
    /// Defining expression of every `ω ∈ Ω` over the typed generators.
    pub definitions: Vec<Polynomial>,
    /// Image of every typed generator in `F⟨Ω⟩`.
    pub phi: Vec<Polynomial>,
    /// `Σ λ_{ε,j} ρ_j`
    pub e_expr: Polynomial,
    /// `Σ σ_i ν_i`
    pub f_expr: Polynomial,
}

impl OddGenerated {
    pub fn substitute(&self, p: &Polynomial) -> Polynomial {
        let images: Vec<Option<Polynomial>> = self.phi.iter().cloned().map(Some).collect();
        p.substitute(&images)
    }

    /// Expresses an `Ω`-polynomial over the typed generators.
    pub fn expand(&self, p: &Polynomial) -> Polynomial {
        let images: Vec<Option<Polynomial>> = self.definitions.iter().cloned().map(Some).collect();
        p.substitute(&images)
    }
}

struct OmegaBuilder {
    names: Vec<String>,
    types: Vec<PeirceType>,
    definitions: Vec<Polynomial>,
}

impl OmegaBuilder {
    fn push(&mut self, name: String, ty: PeirceType, def: Polynomial) -> Polynomial {
        self.names.push(name);
        self.types.push(ty);
        self.definitions.push(def);
        Polynomial::letter(self.names.len() as Letter - 1)
    }
}

pub fn build_odd_generating_set(
    hp: &Homogenized,
    w_e: &WitnessDecomposition,
    w_f: &WitnessDecomposition,
) -> Result<OddGenerated> {
    if w_e.is_empty() || w_f.is_empty() {
        return Err(Error::EmptyWitness);
    }
    let hnames = hp.presentation.generators();
    let eps = Polynomial::letter(hp.epsilon);
    let f = hp.side(Side::F);
    let mapped = |w: &WitnessDecomposition| -> Vec<(Polynomial, Polynomial)> {
        w.terms()
            .iter()
            .map(|(u, v)| (hp.substitute(u), hp.substitute(v)))
            .collect()
    };
    let we = mapped(w_e);
    let wf = mapped(w_f);

    let mut b = OmegaBuilder {
        names: Vec::new(),
        types: Vec::new(),
        definitions: Vec::new(),
    };
    let mut phi = vec![Polynomial::zero(); hnames.len()];
    for (l, ty) in hp.types.iter().enumerate() {
        if !ty.is_matched() {
            let z = Polynomial::letter(l as Letter);
            phi[l] = b.push(hnames[l].clone(), *ty, z);
        }
    }
    let rho: Vec<Polynomial> = wf
        .iter()
        .enumerate()
        .map(|(j, (_, t))| b.push(format!("rho_{}", j + 1), FE, f.mul(t).mul(&eps)))
        .collect();
    let nu: Vec<Polynomial> = we
        .iter()
        .enumerate()
        .map(|(i, (_, v))| b.push(format!("nu_{}", i + 1), EF, eps.mul(v).mul(&f)))
        .collect();
    let sigma: Vec<Polynomial> = we
        .iter()
        .enumerate()
        .map(|(i, (u, _))| b.push(format!("sig_{}", i + 1), FE, f.mul(u).mul(&eps)))
        .collect();
    for (l, ty) in hp.types.iter().enumerate() {
        let z = Polynomial::letter(l as Letter);
        let mut img = Polynomial::zero();
        if *ty == EE {
            for (j, (s, _)) in wf.iter().enumerate() {
                let lam = b.push(format!("lam_{}_{}", hnames[l], j + 1), EF, z.mul(s).mul(&f));
                img = &img + &lam.mul(&rho[j]);
            }
            phi[l] = img;
        } else if *ty == FF {
            for (i, (u, _)) in we.iter().enumerate() {
                let mu = b.push(format!("mu_{}_{}", hnames[l], i + 1), FE, z.mul(u).mul(&eps));
                img = &img + &mu.mul(&nu[i]);
            }
            phi[l] = img;
        }
    }
    let mut f_expr = Polynomial::zero();
    for (s, n) in sigma.iter().zip(&nu) {
        f_expr = &f_expr + &s.mul(n);
    }
    let e_expr = phi[hp.epsilon as usize].clone();

    let mut out = Presentation::new(b.names)?;
    out.set_parity(Some(vec![Parity::Odd; b.types.len()]))?;
    let og = OddGenerated {
        presentation: out.clone(),
        types: b.types,
        definitions: b.definitions,
        phi,
        e_expr,
        f_expr,
    };
    let mut rels: Vec<Polynomial> = hp
        .presentation
        .relations()
        .iter()
        .map(|r| og.substitute(r.poly()))
        .collect();
    for (k, def) in og.definitions.iter().enumerate() {
        rels.push(&Polynomial::letter(k as Letter) - &og.substitute(def));
    }
    for r in rels {
        for parity in [Parity::Even, Parity::Odd] {
            out.push_relation_dedup(r.parity_part(parity))?;
        }
    }
    Ok(OddGenerated {
        presentation: out,
        ..og
    })
}

/// Everything produced on the way to `eAe`.
#[derive(Clone, Debug)]
pub struct PeirceOutcome {
    pub presentation: Presentation,
    pub witnesses: WitnessVerdict,
    /// Presentation on `Ω` that was fed to the even-part transformer.
    pub omega: Presentation,
    pub omega_types: Vec<PeirceType>,
    /// Pair presentation with `f_Y` adjoined, before final simplification.
    pub pairs: Presentation,
    /// `e` and `f` on the pair generators of the output.
    pub e_y: Polynomial,
    pub f_y: Polynomial,
    /// Membership of `e_Y - 1` in the output ideal; `None` when not checked.
    pub unit_check: Option<Verdict>,
    pub degenerate_input: bool,
    pub warnings: Vec<String>,
}

fn run_pipeline(
    p: &Presentation,
    spec: IdempotentSpec,
    w_e: &WitnessDecomposition,
    w_f: &WitnessDecomposition,
    max_deg: usize,
    simplify: bool,
    witnesses: WitnessVerdict,
) -> Result<PeirceOutcome> {
    let mut warnings =
        vec!["generators were split into Peirce components e·g·e, e·g·f, f·g·e, f·g·f".to_string()];
    let bound = max_deg.max(p.max_relation_degree());
    let degenerate_input =
        complete_truncated(&p.relation_polys(), &p.default_order(), bound)?.is_degenerate();
    if degenerate_input {
        warnings.push("the relations force 1 = 0; the input algebra is zero".into());
    }

    let hp = peirce_homogenize(p, spec)?;
    let og = build_odd_generating_set(&hp, w_e, w_f)?;
    let (omega, ef) = if simplify {
        let omega_bound = bound.max(og.presentation.max_relation_degree());
        let (o, tracked, _) = tietze_simplify_tracked(
            &og.presentation,
            omega_bound,
            &[og.e_expr.clone(), og.f_expr.clone()],
        )?;
        (o, tracked)
    } else {
        (
            og.presentation.clone(),
            vec![og.e_expr.clone(), og.f_expr.clone()],
        )
    };

    let omega_types: Vec<PeirceType> = omega
        .generators()
        .iter()
        .map(|n| {
            let k = og
                .presentation
                .generator_index(n)
                .expect("simplification keeps names");
            og.types[k as usize]
        })
        .collect();
    let m = omega.num_generators();
    let mut y = even_part_presentation(&omega, bound, false)?;
    let e_y = pair_encode_poly(&ef[0], m)?;
    let f_y = pair_encode_poly(&ef[1], m)?;
    y.push_relation_dedup(f_y.clone())?;

    let (presentation, tracked, unit_check) = if simplify {
        let y_bound = pair_degree_bound(bound).max(y.max_relation_degree());
        let (s, tracked, _) = tietze_simplify_tracked(&y, y_bound, &[e_y.clone(), f_y.clone()])?;
        let check_bound = y_bound
            .max(s.max_relation_degree())
            .max(tracked[0].degree().unwrap_or(0));
        let rs = complete_truncated(&s.relation_polys(), &s.default_order(), check_bound)?;
        let unit = &tracked[0] - &Polynomial::one();
        let verdict = ideal_member(&unit, &rs)?;
        if verdict != Verdict::Member {
            warnings.push(format!("e_Y - 1 was not derived up to degree {check_bound}"));
        }
        (s, tracked, Some(verdict))
    } else {
        warnings.push("e_Y - 1 is not checked on unsimplified output".into());
        (y.clone(), vec![e_y, f_y], None)
    };
    Ok(PeirceOutcome {
        presentation,
        witnesses,
        omega,
        omega_types,
        pairs: y,
        e_y: tracked[0].clone(),
        f_y: tracked[1].clone(),
        unit_check,
        degenerate_input,
        warnings,
    })
}

/// Presentation of `eAe`; refuses unless the witnesses verify.
pub fn peirce_component_presentation(
    p: &Presentation,
    spec: IdempotentSpec,
    w_e: &WitnessDecomposition,
    w_f: &WitnessDecomposition,
    max_deg: usize,
    simplify: bool,
) -> Result<PeirceOutcome> {
    let verdict = verify_witnesses(p, spec, w_e, w_f, max_deg)?;
    if let WitnessVerdict::Inconclusive(why) = &verdict {
        return Err(Error::WitnessesNotVerified(why.clone()));
    }
    run_pipeline(p, spec, w_e, w_f, max_deg, simplify, verdict)
}

/// As [`peirce_component_presentation`], but proceeds on unverified
/// witnesses (the verdict is still recorded).
pub fn peirce_component_presentation_unchecked(
    p: &Presentation,
    spec: IdempotentSpec,
    w_e: &WitnessDecomposition,
    w_f: &WitnessDecomposition,
    max_deg: usize,
    simplify: bool,
) -> Result<PeirceOutcome> {
    let verdict = verify_witnesses(p, spec, w_e, w_f, max_deg)?;
    run_pipeline(p, spec, w_e, w_f, max_deg, simplify, verdict)
}

/// Witnesses stored in the presentation itself.
pub fn stored_witnesses(p: &Presentation) -> Result<(WitnessDecomposition, WitnessDecomposition)> {
    let get = |side| {
        p.witness(side).cloned().ok_or_else(|| {
            Error::InvalidPresentation(format!(
                "missing witness {}",
                if side == Side::E { "e" } else { "f" }
            ))
        })
    };
    Ok((get(Side::E)?, get(Side::F)?))
}

#[cfg(test)]
mod tests;
