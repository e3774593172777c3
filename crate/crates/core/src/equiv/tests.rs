use proptest::prelude::*;

use super::*;
use crate::freealg::{scalar, Letter, Word};
use crate::grading::{even_part_presentation, pair_generator_map};
use crate::ncgb::{complete_truncated, hilbert_profile};
use crate::presio::{expand_schemas, parse_presentation, print_canonical};

const EXAMPLE1: &str = "gens x y; odd x y; rel x^2; rel y*x*y; schema x*y^(2*i+1)*x = 0 for i >= 1;";
const A0: &str = "gens a b c; rel a^2; rel c^2; rel b*a; rel c*b; rel c*a;";

/// Words of length `d` over two letters avoiding every forbidden factor.
fn avoiding(forbidden: &[Vec<Letter>], d: usize) -> u128 {
    (0..1u64 << d)
        .filter(|bits| {
            let w = Word::new((0..d).map(|k| ((bits >> k) & 1) as Letter).collect());
            !forbidden.iter().any(|f| w.has_factor(f))
        })
        .count() as u128
}

fn example_forbidden(max_deg: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![vec![0, 0], vec![1, 0, 1]];
    let mut i = 1;
    while 2 * i + 3 <= max_deg {
        let mut w = vec![0];
        w.extend(std::iter::repeat_n(1, 2 * i + 1));
        w.push(0);
        out.push(w);
        i += 1;
    }
    out
}

fn profile(p: &Presentation, d: usize) -> Vec<u128> {
    let bound = d.max(p.max_relation_degree());
    let rs = complete_truncated(&p.relation_polys(), &p.default_order(), bound).unwrap();
    hilbert_profile(&rs, d).unwrap().dims
}

#[test]
fn tietze_eliminates_a_defined_generator() {
    let p = parse_presentation("gens g h; rel g - h;").unwrap();
    let s = tietze_simplify(&p, 4).unwrap();
    assert_eq!(s.generators(), ["h"]);
    assert!(s.relations().is_empty());
}

#[test]
fn tietze_fixes_minimal_presentations() {
    let p = parse_presentation(A0).unwrap();
    let s = tietze_simplify(&p, 4).unwrap();
    assert_eq!(s.generators(), p.generators());
    let mut a: Vec<_> = s.relations().to_vec();
    let mut b: Vec<_> = p.relations().to_vec();
    a.sort_by_key(|r| r.leading_word().clone());
    b.sort_by_key(|r| r.leading_word().clone());
    assert_eq!(a, b);
    assert_eq!(tietze_simplify(&s, 4).unwrap(), s);
}

#[test]
fn tietze_drops_scalar_multiples_and_implied_relations() {
    let p = parse_presentation("gens x y; rel x*y; rel 3*x*y; rel x*y*x;").unwrap();
    let s = tietze_simplify(&p, 4).unwrap();
    assert_eq!(print_canonical(&s), "gens x y;\nrel x*y;\n");
}

#[test]
fn tietze_deletes_zero_generators() {
    let p = parse_presentation("gens x y z; rel y; rel x*y + z*z; rel x*x*z;").unwrap();
    let s = tietze_simplify(&p, 4).unwrap();
    assert_eq!(s.generators(), ["x", "z"]);
    assert_eq!(profile(&s, 4), profile(&p, 4));
}

#[test]
fn tietze_uses_derived_definitions() {
    // (ab)a = a(ba) forces a = b, visible only after completion
    let p = parse_presentation("gens a b; rel a*b - 1; rel a*b*a - b;").unwrap();
    let (s, tracked, log) =
        tietze_simplify_tracked(&p, 4, &[parse_polynomial(&p, "a + b").unwrap()]).unwrap();
    assert!(log.contains(&TietzeStep::Derive("b".into())), "{log:?}");
    assert_eq!(s.generators(), ["b"]);
    assert_eq!(print_canonical(&s), "gens b;\nrel b^2 - 1;\n");
    assert_eq!(tracked, [parse_polynomial(&s, "2*b").unwrap()]);
}

#[test]
fn tietze_reaches_the_five_relation_form() {
    let p = parse_presentation(EXAMPLE1).unwrap();
    let raw = even_part_presentation(&p, 4, false).unwrap();
    assert_eq!(raw.relations().len(), 9);
    let s = tietze_simplify(&raw, 3).unwrap();
    let gm = GeneratorMap::parse(&parse_presentation(A0).unwrap(), &s, "a = y12, b = y22, c = y21").unwrap();
    let a0 = parse_presentation(A0).unwrap();
    let mut images: Vec<Polynomial> = a0.relations().iter().map(|r| gm.apply(r.poly())).collect();
    let mut got = s.relation_polys();
    images.sort_by_key(|p| p.terms().keys().next_back().cloned());
    got.sort_by_key(|p| p.terms().keys().next_back().cloned());
    assert_eq!(images, got);
    assert_eq!(profile(&s, 3), profile(&raw, 3));
}

#[test]
fn hilbert_free_case() {
    let p1 = parse_presentation("gens x y;").unwrap();
    let p2 = parse_presentation("gens y11 y12 y21 y22;").unwrap();
    let r = compare_hilbert(&p1, &p2, 3, 2).unwrap();
    assert_eq!(r.verdict, EquivVerdict::ConsistentUpToDegree);
    for row in &r.rows {
        assert_eq!(row.second, 4u128.pow(row.degree as u32));
    }
}

#[test]
fn hilbert_example_against_enumeration() {
    let p = parse_presentation(EXAMPLE1).unwrap();
    let p1 = expand_schemas(&p, 12);
    let p2 = even_part_presentation(&p, 12, true).unwrap();
    let r = compare_hilbert(&p1, &p2, 6, 2).unwrap();
    assert_eq!(r.verdict, EquivVerdict::ConsistentUpToDegree);
    let forbidden = example_forbidden(12);
    for row in &r.rows {
        assert_eq!(row.first, avoiding(&forbidden, 2 * row.degree));
    }
    assert_eq!(r.rows[1].second, 3);
    assert_eq!(r.rows[2].second, 4);
}

#[test]
fn hilbert_mismatch_after_dropping_a_relation() {
    let p = parse_presentation(EXAMPLE1).unwrap();
    let p1 = expand_schemas(&p, 12);
    let full = even_part_presentation(&p, 12, true).unwrap();
    let mut cut = Presentation::new(full.generators().to_vec()).unwrap();
    let drop = parse_polynomial(&full, "y21*y12").unwrap();
    for r in full.relation_polys() {
        if r != drop {
            cut.push_relation(r).unwrap();
        }
    }
    let r = compare_hilbert(&p1, &cut, 6, 2).unwrap();
    assert_eq!(r.verdict, EquivVerdict::Mismatch { degree: 2 });
    assert_eq!((r.rows[2].first, r.rows[2].second), (4, 5));
}

#[test]
fn hilbert_comparison_is_symmetric() {
    let a = parse_presentation(A0).unwrap();
    let b = parse_presentation("gens a b c; rel a^2; rel c^2; rel b*a; rel c*b;").unwrap();
    let ab = compare_hilbert(&a, &b, 4, 1).unwrap();
    let ba = compare_hilbert(&b, &a, 4, 1).unwrap();
    assert_eq!(ab.verdict, ba.verdict);
    assert_eq!(ab.verdict, EquivVerdict::Mismatch { degree: 2 });
    let p = parse_presentation(EXAMPLE1).unwrap();
    let (x, y) = (
        expand_schemas(&p, 8),
        even_part_presentation(&p, 8, true).unwrap(),
    );
    let fwd = compare_hilbert(&x, &y, 4, 2).unwrap();
    for row in &fwd.rows {
        assert_eq!(profile(&x, 8)[2 * row.degree], row.first);
        assert_eq!(profile(&y, 4)[row.degree], row.second);
    }
}

#[test]
fn generator_map_into_the_example() {
    let src = parse_presentation(A0).unwrap();
    let dst = expand_schemas(&parse_presentation(EXAMPLE1).unwrap(), 12);
    let gm = GeneratorMap::parse(&src, &dst, "a = x*y, b = y^2, c = y*x").unwrap();
    let r = check_generator_map(&src, &dst, &gm, 12).unwrap();
    assert_eq!(r.verdict, EquivVerdict::ConsistentUpToDegree);
    assert_eq!(r.memberships.len(), 5);
    assert!(r.memberships.iter().all(|m| m.verdict == Verdict::Member));
}

#[test]
fn bad_map_is_reported_per_relation() {
    let src = parse_presentation(A0).unwrap();
    let dst = expand_schemas(&parse_presentation(EXAMPLE1).unwrap(), 12);
    let gm = GeneratorMap::parse(&src, &dst, "a = x, b = y, c = y").unwrap();
    let r = check_generator_map(&src, &dst, &gm, 12).unwrap();
    let verdicts: Vec<Verdict> = r.memberships.iter().map(|m| m.verdict).collect();
    assert_eq!(
        verdicts,
        [
            Verdict::Member,
            Verdict::NonMemberUpToDegree,
            Verdict::NonMemberUpToDegree,
            Verdict::NonMemberUpToDegree,
            Verdict::NonMemberUpToDegree
        ]
    );
    assert_eq!(r.verdict, EquivVerdict::Mismatch { degree: 2 });
}

#[test]
fn identity_map_is_consistent() {
    let p = parse_presentation(A0).unwrap();
    let gm = GeneratorMap::parse(&p, &p, "a = a, b = b, c = c").unwrap();
    assert_eq!(
        check_generator_map(&p, &p, &gm, 4).unwrap().verdict,
        EquivVerdict::ConsistentUpToDegree
    );
}

#[test]
fn encoding_map_into_the_example() {
    let p = parse_presentation(EXAMPLE1).unwrap();
    let dst = expand_schemas(&p, 12);
    for simplify in [false, true] {
        let y = even_part_presentation(&p, 10, simplify).unwrap();
        let gm = pair_generator_map(&y, &dst).unwrap();
        let r = check_generator_map(&y, &dst, &gm, 12).unwrap();
        assert_eq!(r.verdict, EquivVerdict::ConsistentUpToDegree);
    }
}

#[test]
fn map_parse_errors() {
    let p = parse_presentation(A0).unwrap();
    assert!(GeneratorMap::parse(&p, &p, "a = a, b = b").is_err());
    assert!(GeneratorMap::parse(&p, &p, "a = a, a = b, c = c").is_err());
    assert!(GeneratorMap::parse(&p, &p, "a = q, b = b, c = c").is_err());
    assert!(GeneratorMap::parse(&p, &p, "a, b = b, c = c").is_err());
}

#[test]
fn image_above_truncation_is_an_error() {
    let p = parse_presentation(A0).unwrap();
    let gm = GeneratorMap::parse(&p, &p, "a = a*a*a, b = b, c = c").unwrap();
    assert!(check_generator_map(&p, &p, &gm, 4).is_err());
}

fn arb_monomial_presentation() -> impl Strategy<Value = Presentation> {
    prop::collection::vec(
        prop::collection::vec((prop::collection::vec(0..3 as Letter, 1..=3), -2i64..=2), 1..=2),
        0..=4,
    )
    .prop_map(|rels| {
        let mut p = Presentation::new(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        for terms in rels {
            let poly = Polynomial::from_terms(terms.into_iter().map(|(w, c)| (Word::new(w), scalar(c))));
            let _ = p.push_relation_dedup(poly);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn simplification_preserves_homogeneous_profiles(p in arb_monomial_presentation()) {
        prop_assume!(p.is_homogeneous());
        let s = tietze_simplify(&p, 5).unwrap();
        prop_assert_eq!(profile(&s, 5), profile(&p, 5));
    }

    #[test]
    fn simplification_is_idempotent(p in arb_monomial_presentation()) {
        let s = tietze_simplify(&p, 4).unwrap();
        prop_assert_eq!(tietze_simplify(&s, 4).unwrap(), s);
    }
}
