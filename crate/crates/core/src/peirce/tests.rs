use num_traits::Zero;

use super::*;
use crate::freealg::{scalar, Scalar};
use crate::ncgb::hilbert_profile;
use crate::presio::{parse_polynomial, parse_presentation, print_canonical};

const MAT2: &str = "gens e a b;
rel e^2 - e; rel e*a - a; rel a*e; rel e*b; rel b*e - b;
rel a*b - e; rel b*a + e - 1; rel a^2; rel b^2;
idempotent e;
witness e: 1 = e + b*e*a;
witness f: 1 = f + a*f*b;";

type Mat = [[Scalar; 2]; 2];

fn unit(i: usize, j: usize) -> Mat {
    let mut m: Mat = Default::default();
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x = Scalar::zero();
        }
    }
    m[i][j] = scalar(1);
    m
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = unit(0, 0);
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        }
    }
    out
}

/// Evaluates `p` at the given matrices, one per letter.
fn eval(p: &Polynomial, at: &[Mat]) -> Mat {
    let mut acc = unit(0, 0);
    acc[0][0] = Scalar::zero();
    for (w, c) in p.iter() {
        let mut m = unit(0, 0);
        m[1][1] = scalar(1);
        for &l in w.letters() {
            m = mat_mul(&m, &at[l as usize]);
        }
        for i in 0..2 {
            for j in 0..2 {
                acc[i][j] = &acc[i][j] + &(c * &m[i][j]);
            }
        }
    }
    acc
}

fn is_zero(m: &Mat) -> bool {
    m.iter().flatten().all(Zero::is_zero)
}

fn matrix_units() -> Vec<Mat> {
    vec![unit(0, 0), unit(0, 1), unit(1, 0)]
}

/// Peirce component `x_pq = s_p x s_q` of a matrix.
fn component(x: &Mat, ty: PeirceType) -> Mat {
    let side = |s| if s == Side::E { unit(0, 0) } else { unit(1, 1) };
    mat_mul(&mat_mul(&side(ty.left), x), &side(ty.right))
}

fn mat2() -> (
    Presentation,
    IdempotentSpec,
    WitnessDecomposition,
    WitnessDecomposition,
) {
    let p = parse_presentation(MAT2).unwrap();
    let spec = IdempotentSpec::of(&p).unwrap();
    let (we, wf) = stored_witnesses(&p).unwrap();
    (p, spec, we, wf)
}

#[test]
fn matrix_oracle_satisfies_the_fixture() {
    let (p, _, we, wf) = mat2();
    let at = matrix_units();
    for r in p.relations() {
        assert!(is_zero(&eval(r.poly(), &at)));
    }
    let e = Polynomial::letter(0);
    let one = Polynomial::one();
    assert!(is_zero(&eval(&(&one - &we.expand(&e)), &at)));
    assert!(is_zero(&eval(&(&one - &wf.expand(&(&one - &e))), &at)));
}

#[test]
fn matrix_witnesses_verify() {
    let (p, spec, we, wf) = mat2();
    assert_eq!(
        verify_witnesses(&p, spec, &we, &wf, 8).unwrap(),
        WitnessVerdict::Verified
    );
}

#[test]
fn partial_witness_is_inconclusive() {
    let (p, spec, _, wf) = mat2();
    let we = WitnessDecomposition::new(Side::E, vec![(Polynomial::one(), Polynomial::one())], 0).unwrap();
    assert!(matches!(
        verify_witnesses(&p, spec, &we, &wf, 8).unwrap(),
        WitnessVerdict::Inconclusive(_)
    ));
}

#[test]
fn missing_idempotent_relation_is_an_error() {
    let p = parse_presentation("gens e a; rel e*a - a; idempotent e; witness e: 1 = e; witness f: 1 = f;")
        .unwrap();
    let spec = IdempotentSpec::of(&p).unwrap();
    let (we, wf) = stored_witnesses(&p).unwrap();
    assert!(matches!(
        verify_witnesses(&p, spec, &we, &wf, 6),
        Err(Error::MissingIdempotentRelation(_))
    ));
    assert!(peirce_homogenize(&p, spec).is_err());
}

#[test]
fn witness_above_truncation_is_an_error() {
    let (p, spec, we, wf) = mat2();
    assert!(matches!(
        verify_witnesses(&p, spec, &we, &wf, 2),
        Err(Error::DegreeExceedsTruncation { .. })
    ));
}

#[test]
fn homogenize_single_extra_generator() {
    let p = parse_presentation("gens e g; rel e^2 - e; idempotent e;").unwrap();
    let h = peirce_homogenize(&p, IdempotentSpec::of(&p).unwrap()).unwrap();
    assert_eq!(h.presentation.generators(), ["e", "g_ee", "g_ef", "g_fe", "g_ff"]);
    assert_eq!(
        print_canonical(&h.presentation),
        "gens e g_ee g_ef g_fe g_ff;\n\
         rel e^2 - e;\n\
         rel e*g_ee - g_ee;\nrel g_ee*e - g_ee;\n\
         rel e*g_ef - g_ef;\nrel g_ef*e;\n\
         rel e*g_fe;\nrel g_fe*e - g_fe;\n\
         rel e*g_ff;\nrel g_ff*e;\n"
    );
}

#[test]
fn homogenize_idempotent_only() {
    let p = parse_presentation("gens e; rel e^2 - e; idempotent e;").unwrap();
    let h = peirce_homogenize(&p, IdempotentSpec::of(&p).unwrap()).unwrap();
    assert_eq!(print_canonical(&h.presentation), "gens e;\nrel e^2 - e;\n");
}

#[test]
fn homogenized_matrix_components() {
    let (p, spec, _, _) = mat2();
    let h = peirce_homogenize(&p, spec).unwrap();
    let hp = &h.presentation;
    let rs = complete_truncated(&hp.relation_polys(), &hp.default_order(), 6).unwrap();
    for name in ["a_ee", "a_fe", "a_ff", "b_ee", "b_ef", "b_ff"] {
        let g = parse_polynomial(hp, name).unwrap();
        assert!(rs.reduce(&g).is_zero(), "{name}");
    }
    for name in ["a_ef", "b_fe"] {
        let g = parse_polynomial(hp, name).unwrap();
        assert!(!rs.reduce(&g).is_zero(), "{name}");
    }
}

/// Original relations hold after `g ↦ Σ g_pq`; typing relations hold
/// after `g_pq ↦ s_p g s_q`.
#[test]
fn homogenization_round_trip() {
    let (p, spec, _, _) = mat2();
    let h = peirce_homogenize(&p, spec).unwrap();
    let hp = &h.presentation;
    let rs_h = complete_truncated(&hp.relation_polys(), &hp.default_order(), 6).unwrap();
    for r in p.relations() {
        assert!(rs_h.reduce(&h.substitute(r.poly())).is_zero());
    }
    let e = Polynomial::letter(spec.generator);
    let back: Vec<Option<Polynomial>> = h
        .origins
        .iter()
        .map(|o| match o {
            None => Some(e.clone()),
            Some((g, ty)) => {
                let s = |side| side_element(side, &e);
                Some(s(ty.left).mul(&Polynomial::letter(*g)).mul(&s(ty.right)))
            }
        })
        .collect();
    let rs = complete_truncated(&p.relation_polys(), &p.default_order(), 6).unwrap();
    for r in hp.relations() {
        assert!(rs.reduce(&r.poly().substitute(&back)).is_zero());
    }
    // and the matrix oracle agrees on every typed generator
    let at = matrix_units();
    let typed: Vec<Mat> = h
        .origins
        .iter()
        .map(|o| match o {
            None => at[0].clone(),
            Some((g, ty)) => component(&at[*g as usize], *ty),
        })
        .collect();
    for r in hp.relations() {
        assert!(is_zero(&eval(r.poly(), &typed)));
    }
}

#[test]
fn odd_generating_set_of_the_matrix_fixture() {
    let (p, spec, we, wf) = mat2();
    let h = peirce_homogenize(&p, spec).unwrap();
    let og = build_odd_generating_set(&h, &we, &wf).unwrap();
    let names = og.presentation.generators();
    for n in [
        "a_ef", "a_fe", "b_ef", "b_fe", "rho_1", "rho_2", "nu_1", "nu_2", "sig_1", "sig_2",
    ] {
        assert!(names.iter().any(|g| g == n), "{n}");
    }
    for n in ["lam_e_1", "lam_e_2", "lam_a_ee_2", "mu_b_ff_1"] {
        assert!(names.iter().any(|g| g == n), "{n}");
    }
    assert_eq!(names.len(), 20);
    assert!(og.types.iter().all(|t| !t.is_matched()));

    // factorization identities in the homogenized system
    let hp = &h.presentation;
    let rs = complete_truncated(&hp.relation_polys(), &hp.default_order(), 8).unwrap();
    for (l, ty) in h.types.iter().enumerate() {
        if ty.is_matched() {
            let z = Polynomial::letter(l as Letter);
            assert!(rs.reduce(&(&og.expand(&og.phi[l]) - &z)).is_zero());
        }
    }
    let f = h.side(Side::F);
    assert!(rs.reduce(&(&og.expand(&og.f_expr) - &f)).is_zero());
    let one_minus = &(&Polynomial::one() - &og.expand(&og.e_expr)) - &og.expand(&og.f_expr);
    assert!(rs.reduce(&one_minus).is_zero());

    // every Ω relation holds in the matrix oracle
    let at = matrix_units();
    let typed: Vec<Mat> = h
        .origins
        .iter()
        .map(|o| match o {
            None => at[0].clone(),
            Some((g, ty)) => component(&at[*g as usize], *ty),
        })
        .collect();
    let omega_vals: Vec<Mat> = og.definitions.iter().map(|d| eval(d, &typed)).collect();
    for r in og.presentation.relations() {
        assert!(is_zero(&eval(r.poly(), &omega_vals)));
    }
}

#[test]
fn odd_generating_set_minimal_case() {
    let p =
        parse_presentation("gens e p q; rel e^2 - e; rel e*p - p; rel p*e; rel e*q; rel q*e - q;").unwrap();
    let hp = p.clone();
    let h = Homogenized {
        presentation: hp,
        types: vec![EE, EF, FE],
        epsilon: 0,
        images: (0..3).map(Polynomial::letter).collect(),
        origins: vec![None, None, None],
    };
    let one = || vec![(Polynomial::one(), Polynomial::one())];
    let we = WitnessDecomposition::new(Side::E, one(), 0).unwrap();
    let wf = WitnessDecomposition::new(Side::F, one(), 0).unwrap();
    let og = build_odd_generating_set(&h, &we, &wf).unwrap();
    let mut names = og.presentation.generators().to_vec();
    names.sort();
    assert_eq!(names, ["lam_e_1", "nu_1", "p", "q", "rho_1", "sig_1"]);
}

#[test]
fn empty_witness_is_rejected() {
    assert!(matches!(
        WitnessDecomposition::new(Side::E, vec![], 0),
        Err(Error::EmptyWitness)
    ));
}

#[test]
fn matrix_corner_is_the_field() {
    let (p, spec, we, wf) = mat2();
    let out = peirce_component_presentation(&p, spec, &we, &wf, 8, true).unwrap();
    assert_eq!(out.witnesses, WitnessVerdict::Verified);
    assert_eq!(out.unit_check, Some(Verdict::Member));
    let y = &out.presentation;
    let rs = complete_truncated(
        &y.relation_polys(),
        &y.default_order(),
        4.max(y.max_relation_degree()),
    )
    .unwrap();
    assert_eq!(hilbert_profile(&rs, 4).unwrap().dims, vec![1, 0, 0, 0, 0]);
}

#[test]
fn mismatched_pairs_vanish() {
    let (p, spec, we, wf) = mat2();
    let out = peirce_component_presentation(&p, spec, &we, &wf, 8, true).unwrap();
    let y = &out.pairs;
    let m = out.omega.num_generators();
    let rs = complete_truncated(&y.relation_polys(), &y.default_order(), 6).unwrap();
    let mut checked = 0;
    for q in crate::freealg::PairIndex::all(m) {
        if out.omega_types[q.left as usize].right != out.omega_types[q.right as usize].left {
            assert!(rs.reduce(&Polynomial::letter(q.code(m))).is_zero(), "{q:?}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn direct_sum_is_refused() {
    let p =
        parse_presentation("gens e; rel e^2 - e; idempotent e; witness e: 1 = e; witness f: 1 = f;").unwrap();
    let spec = IdempotentSpec::of(&p).unwrap();
    let (we, wf) = stored_witnesses(&p).unwrap();
    assert!(matches!(
        verify_witnesses(&p, spec, &we, &wf, 6).unwrap(),
        WitnessVerdict::Inconclusive(_)
    ));
    assert!(matches!(
        peirce_component_presentation(&p, spec, &we, &wf, 6, true),
        Err(Error::WitnessesNotVerified(_))
    ));
}

#[test]
fn degenerate_input_warns() {
    let p =
        parse_presentation("gens e; rel e^2 - e; rel 1; idempotent e; witness e: 1 = e; witness f: 1 = f;")
            .unwrap();
    let spec = IdempotentSpec::of(&p).unwrap();
    let (we, wf) = stored_witnesses(&p).unwrap();
    let out = peirce_component_presentation(&p, spec, &we, &wf, 4, true).unwrap();
    assert!(out.degenerate_input);
    assert!(out.warnings.iter().any(|w| w.contains("1 = 0")));
}
