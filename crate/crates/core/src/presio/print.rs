use std::fmt::Write;

use num_traits::{One, Signed};

use super::{AffineExponent, Presentation, RelationSchema, Side};
use crate::freealg::{Letter, MonomialOrder, Parity, Polynomial, Scalar, Word};

fn push_factor(out: &mut Vec<String>, name: &str, k: usize) {
    if k == 1 {
        out.push(name.to_string());
    } else {
        out.push(format!("{name}^{k}"));
    }
}

fn word_factors(w: &[Letter], names: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        push_factor(&mut out, &names[w[i] as usize], j - i);
        i = j;
    }
    out
}

/// `x*y^3*x`; the empty word prints as `1`.
pub fn format_word(w: &Word, names: &[String]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        word_factors(w.letters(), names).join("*")
    }
}

/// Appends a signed term `±c*body` to `out`.
fn push_term(out: &mut String, first: bool, c: &Scalar, body: Option<String>) {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    match body {
        None => write!(out, "{abs}").unwrap(),
        Some(b) if abs.is_one() => out.push_str(&b),
        Some(b) => write!(out, "{abs}*{b}").unwrap(),
    }
}

/// Terms in decreasing monomial order.
pub fn format_polynomial(p: &Polynomial, names: &[String], ord: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, c)) in p.sorted_terms(ord).into_iter().enumerate() {
        let body = (!w.is_empty()).then(|| format_word(w, names));
        push_term(&mut out, i == 0, c, body);
    }
    out
}

fn format_exponent(e: &AffineExponent, param: &str) -> Option<String> {
    if e.slope == 0 {
        return (e.offset != 1).then(|| e.offset.to_string());
    }
    let mut s = match e.slope {
        1 => param.to_string(),
        k => format!("{k}*{param}"),
    };
    if e.offset == 0 && e.slope == 1 {
        return Some(s);
    }
    if e.offset > 0 {
        write!(s, "+{}", e.offset).unwrap();
    } else if e.offset < 0 {
        write!(s, "{}", e.offset).unwrap();
    }
    Some(format!("({s})"))
}

fn format_schema(s: &RelationSchema, names: &[String]) -> String {
    let mut out = String::new();
    for (i, t) in s.terms.iter().enumerate() {
        let body = (!t.factors.is_empty()).then(|| {
            t.factors
                .iter()
                .map(|(g, e)| {
                    let n = &names[*g as usize];
                    match format_exponent(e, &s.parameter) {
                        None => n.clone(),
                        Some(x) => format!("{n}^{x}"),
                    }
                })
                .collect::<Vec<_>>()
                .join("*")
        });
        push_term(&mut out, i == 0, &t.coefficient, body);
    }
    format!("schema {out} = 0 for {} >= {};", s.parameter, s.lower)
}

/// Deterministic canonical text; parsing it back yields an equal value.
pub fn print_canonical(p: &Presentation) -> String {
    let names = p.generators();
    let ord = p.default_order();
    let mut out = String::new();
    if names.is_empty() {
        out.push_str("gens;\n");
    } else {
        writeln!(out, "gens {};", names.join(" ")).unwrap();
    }
    if let Some(par) = p.parity() {
        for (kw, want) in [("odd", Parity::Odd), ("even", Parity::Even)] {
            let sel: Vec<&str> = names
                .iter()
                .zip(par)
                .filter(|(_, q)| **q == want)
                .map(|(n, _)| n.as_str())
                .collect();
            if !sel.is_empty() {
                writeln!(out, "{kw} {};", sel.join(" ")).unwrap();
            }
        }
    }
    for r in p.relations() {
        writeln!(out, "rel {};", format_polynomial(r.poly(), names, &ord)).unwrap();
    }
    for s in p.schemas() {
        writeln!(out, "{}", format_schema(s, names)).unwrap();
    }
    if let Some(e) = p.idempotent() {
        let e_name = &names[e as usize];
        writeln!(out, "idempotent {e_name};").unwrap();
        for side in [Side::E, Side::F] {
            let Some(w) = p.witness(side) else { continue };
            let (label, marker) = match side {
                Side::E => ("e", e_name.as_str()),
                Side::F => ("f", "f"),
            };
            let mut body = String::new();
            for (i, (u, v)) in w.terms().iter().enumerate() {
                let (uw, c) = u.iter().next().expect("monomial");
                let vw = v.words().next().expect("monomial");
                let mut parts = word_factors(uw.letters(), names);
                parts.push(marker.to_string());
                parts.extend(word_factors(vw.letters(), names));
                push_term(&mut body, i == 0, c, Some(parts.join("*")));
            }
            writeln!(out, "witness {label}: 1 = {body};").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{expand_schemas, parse_presentation};
    use super::*;

    const EXAMPLE1: &str =
        "gens x y; odd x y; rel x^2 = 0; rel y*x*y = 0; schema x*y^(2*i+1)*x = 0 for i >= 1;";

    #[test]
    fn example_one_round_trips() {
        let p = parse_presentation(EXAMPLE1).unwrap();
        let text = print_canonical(&p);
        assert_eq!(
            text,
            "gens x y;\nodd x y;\nrel x^2;\nrel y*x*y;\nschema x*y^(2*i+1)*x = 0 for i >= 1;\n"
        );
        assert_eq!(parse_presentation(&text).unwrap(), p);
        assert_eq!(print_canonical(&p), text);
    }

    #[test]
    fn relations_print_monic() {
        let p = parse_presentation("gens x; rel 2*x^2;").unwrap();
        assert_eq!(print_canonical(&p), "gens x;\nrel x^2;\n");
    }

    #[test]
    fn empty_relation_list_prints_header_only() {
        let p = parse_presentation("gens a b;").unwrap();
        assert_eq!(print_canonical(&p), "gens a b;\n");
    }

    #[test]
    fn terms_decrease_and_signs_render() {
        let p = parse_presentation("gens e a b; rel b*a = 1 - e; rel 1/2*a + 3*b*b;").unwrap();
        let text = print_canonical(&p);
        assert_eq!(text, "gens e a b;\nrel b*a + e - 1;\nrel b^2 + 1/6*a;\n");
        assert_eq!(parse_presentation(&text).unwrap(), p);
    }

    #[test]
    fn witnesses_round_trip() {
        let src = "gens e a b; rel e^2 - e; idempotent e;
                   witness e: 1 = e + b*e*a; witness f: 1 = f + a*f*b;";
        let p = parse_presentation(src).unwrap();
        let text = print_canonical(&p);
        assert!(text.contains("witness e: 1 = e + b*e*a;"), "{text}");
        assert!(text.contains("witness f: 1 = f + a*f*b;"), "{text}");
        assert_eq!(parse_presentation(&text).unwrap(), p);
    }

    #[test]
    fn expanded_presentation_round_trips() {
        let p = expand_schemas(&parse_presentation(EXAMPLE1).unwrap(), 9);
        assert_eq!(parse_presentation(&print_canonical(&p)).unwrap(), p);
    }

    #[test]
    fn zero_generators_round_trip() {
        let p = Presentation::new(vec![]).unwrap();
        assert_eq!(parse_presentation(&print_canonical(&p)).unwrap(), p);
    }
}
