#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use fpa::freealg::{scalar, Letter, Polynomial, Word};
use fpa::presio::{parse_presentation, Presentation};
use proptest::prelude::*;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> Presentation {
    parse_presentation(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

pub fn fpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpa"))
        .args(args)
        .current_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../.."))
        .output()
        .unwrap()
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Report text with `#` annotation lines removed.
pub fn presentation_part(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

/// All words of length `d` over `m` letters.
pub fn all_words(m: usize, d: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Letter>| {
                (0..m as Letter).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Word::new).collect()
}

/// Leading words of the Example relations `x^2`, `yxy` and `x y^(2i+1) x`
/// for `2i + 3 <= max_deg`, over `x = 0`, `y = 1`.
pub fn example_forbidden(max_deg: usize) -> Vec<Vec<Letter>> {
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

/// Number of words of length `d` over `m` letters with no forbidden factor.
pub fn count_avoiding(m: usize, forbidden: &[Vec<Letter>], d: usize) -> u128 {
    all_words(m, d)
        .iter()
        .filter(|w| !forbidden.iter().any(|f| w.has_factor(f)))
        .count() as u128
}

pub fn arb_word(m: Letter, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..m, 0..=max_len).prop_map(Word::new)
}

pub fn arb_poly(m: Letter, max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((arb_word(m, max_len), -3i64..=3), 0..=4)
        .prop_map(|terms| Polynomial::from_terms(terms.into_iter().map(|(w, c)| (w, scalar(c)))))
}
