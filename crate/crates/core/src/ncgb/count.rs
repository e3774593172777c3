use std::collections::VecDeque;

use super::rules::RuleSet;
use crate::freealg::Letter;

const DEAD: u32 = u32::MAX;

/// Deterministic recognizer of the words avoiding a finite set of factors
/// (Aho–Corasick goto/failure construction with matching states removed).
#[derive(Clone, Debug)]
pub struct NormalWordAutomaton {
    alphabet: usize,
    /// `trans[state * alphabet + letter]`, `DEAD` for rejecting transitions.
    trans: Vec<u32>,
    start_alive: bool,
}

impl NormalWordAutomaton {
    pub(crate) fn from_factors<'a>(factors: impl IntoIterator<Item = &'a [Letter]>, alphabet: usize) -> Self {
        let mut goto: Vec<Vec<u32>> = vec![vec![DEAD; alphabet]];
        let mut terminal = vec![false];
        for f in factors {
            let mut s = 0usize;
            for &l in f {
                let next = goto[s][l as usize];
                s = if next == DEAD {
                    goto.push(vec![DEAD; alphabet]);
                    terminal.push(false);
                    let id = goto.len() - 1;
                    goto[s][l as usize] = id as u32;
                    id
                } else {
                    next as usize
                };
            }
            terminal[s] = true;
        }

        let n = goto.len();
        let mut fail = vec![0usize; n];
        let mut delta = vec![0u32; n * alphabet];
        let mut queue = VecDeque::new();
        for l in 0..alphabet {
            match goto[0][l] {
                DEAD => delta[l] = 0,
                t => {
                    delta[l] = t;
                    fail[t as usize] = 0;
                    queue.push_back(t as usize);
                }
            }
        }
        while let Some(s) = queue.pop_front() {
            terminal[s] = terminal[s] || terminal[fail[s]];
            for l in 0..alphabet {
                match goto[s][l] {
                    DEAD => delta[s * alphabet + l] = delta[fail[s] * alphabet + l],
                    t => {
                        let t = t as usize;
                        fail[t] = delta[fail[s] * alphabet + l] as usize;
                        delta[s * alphabet + l] = t as u32;
                        queue.push_back(t);
                    }
                }
            }
        }

        let trans = delta
            .iter()
            .map(|&t| if terminal[t as usize] { DEAD } else { t })
            .collect();
        NormalWordAutomaton {
            alphabet,
            trans,
            start_alive: !terminal[0],
        }
    }

    pub fn num_states(&self) -> usize {
        self.trans.len().checked_div(self.alphabet).unwrap_or(1)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        if !self.start_alive {
            return false;
        }
        let mut s = 0usize;
        for &l in w {
            let t = self.trans[s * self.alphabet + l as usize];
            if t == DEAD {
                return false;
            }
            s = t as usize;
        }
        true
    }

    /// Number of accepted words of each length `0..=max_d`.
    pub fn path_counts(&self, max_d: usize) -> Vec<u128> {
        let mut out = Vec::with_capacity(max_d + 1);
        if !self.start_alive {
            out.resize(max_d + 1, 0);
            return out;
        }
        let n = self.num_states();
        let mut cur = vec![0u128; n];
        cur[0] = 1;
        out.push(1);
        for _ in 0..max_d {
            let mut next = vec![0u128; n];
            for (s, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &t in &self.trans[s * self.alphabet..(s + 1) * self.alphabet] {
                    if t != DEAD {
                        next[t as usize] += c;
                    }
                }
            }
            out.push(next.iter().sum());
            cur = next;
        }
        out
    }
}

/// Depth-first enumeration of degree-`d` words with no rule left-hand side
/// as a factor, pruning as soon as a suffix matches.
pub(crate) fn count_by_enumeration(rules: &RuleSet, alphabet: usize, d: usize) -> u128 {
    let lengths: Vec<usize> = rules.lengths().collect();
    if lengths.first() == Some(&0) {
        return 0;
    }
    fn go(rules: &RuleSet, lengths: &[usize], alphabet: usize, buf: &mut Vec<Letter>, left: usize) -> u128 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for l in 0..alphabet as Letter {
            buf.push(l);
            let n = buf.len();
            let bad = lengths
                .iter()
                .take_while(|&&k| k <= n)
                .any(|&k| rules.is_lhs(&buf[n - k..]));
            if !bad {
                total += go(rules, lengths, alphabet, buf, left - 1);
            }
            buf.pop();
        }
        total
    }
    go(rules, &lengths, alphabet, &mut Vec::with_capacity(d), d)
}
