use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{
    is_identifier, AffineExponent, Presentation, RelationSchema, SchemaTerm, Side, WitnessDecomposition,
    KEYWORDS,
};
use crate::error::{Error, Result};
use crate::freealg::{Letter, Parity, Polynomial, Scalar, Word};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                line: tl,
                column: tc,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: tl,
                column: tc,
            });
            continue;
        }
        let sym = match c {
            '>' if chars.get(i + 1) == Some(&'=') => ">=",
            ';' => ";",
            '=' => "=",
            '+' => "+",
            '-' => "-",
            '*' => "*",
            '^' => "^",
            '/' => "/",
            '(' => "(",
            ')' => ")",
            ':' => ":",
            ',' => ",",
            _ => {
                return Err(Error::Syntax {
                    line: tl,
                    column: tc,
                    message: format!("unexpected character {c:?}"),
                })
            }
        };
        i += sym.len();
        column += sym.len();
        out.push(Token {
            tok: Tok::Sym(sym),
            line: tl,
            column: tc,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

#[derive(Clone, Debug)]
enum Exponent {
    Int(i64),
    Affine {
        slope: i64,
        offset: i64,
        param: Option<String>,
    },
}

#[derive(Clone, Debug)]
struct Factor {
    name: String,
    exp: Exponent,
    line: usize,
    column: usize,
}

#[derive(Clone, Debug)]
struct Term {
    coeff: Scalar,
    factors: Vec<Factor>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(s) if *s == sym) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.err(format!("expected '{sym}'"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => self.err("expected a name"),
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        match self.peek().clone() {
            Tok::Int(n) => match n.to_i64() {
                Some(v) => {
                    self.next();
                    Ok(v)
                }
                None => self.err("integer too large"),
            },
            _ => self.err("expected an integer"),
        }
    }

    fn rational(&mut self) -> Result<Scalar> {
        let num = match self.next() {
            Tok::Int(n) => n,
            _ => return self.err("expected a number"),
        };
        if self.eat("/") {
            let den = match self.peek().clone() {
                Tok::Int(d) => {
                    self.next();
                    d
                }
                _ => return self.err("expected a denominator"),
            };
            if den.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Scalar::new(num, den))
        } else {
            Ok(Scalar::from_integer(num))
        }
    }

    fn poly_expr(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut sign = Scalar::one();
        if self.eat("-") {
            sign = -sign;
        } else {
            self.eat("+");
        }
        loop {
            let mut t = self.term()?;
            t.coeff *= &sign;
            terms.push(t);
            if self.eat("+") {
                sign = Scalar::one();
            } else if self.eat("-") {
                sign = -Scalar::one();
            } else {
                break;
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term> {
        let mut coeff = Scalar::one();
        let mut factors = Vec::new();
        if matches!(self.peek(), Tok::Int(_)) {
            coeff = self.rational()?;
            if matches!(self.peek(), Tok::Sym("*")) && matches!(self.peek_at(1), Tok::Ident(_)) {
                self.next();
            } else if !matches!(self.peek(), Tok::Ident(_)) {
                return Ok(Term { coeff, factors });
            }
        }
        loop {
            factors.push(self.factor()?);
            if matches!(self.peek(), Tok::Sym("*")) {
                self.next();
            } else {
                break;
            }
        }
        Ok(Term { coeff, factors })
    }

    fn factor(&mut self) -> Result<Factor> {
        let (line, column) = self.here();
        let name = self.ident()?;
        let exp = if self.eat("^") {
            self.exponent()?
        } else {
            Exponent::Int(1)
        };
        Ok(Factor {
            name,
            exp,
            line,
            column,
        })
    }

    fn exponent(&mut self) -> Result<Exponent> {
        match self.peek().clone() {
            Tok::Int(_) => Ok(Exponent::Int(self.small_int()?)),
            Tok::Ident(s) => {
                self.next();
                Ok(Exponent::Affine {
                    slope: 1,
                    offset: 0,
                    param: Some(s),
                })
            }
            Tok::Sym("(") => {
                self.next();
                let e = self.affine()?;
                self.expect(")")?;
                Ok(e)
            }
            _ => self.err("malformed exponent"),
        }
    }

    fn affine(&mut self) -> Result<Exponent> {
        let (mut slope, mut offset) = (0i64, 0i64);
        let mut param: Option<String> = None;
        let mut sign = if self.eat("-") { -1 } else { 1 };
        loop {
            let mut coef = 1i64;
            let mut has_int = false;
            if matches!(self.peek(), Tok::Int(_)) {
                coef = self.small_int()?;
                has_int = true;
                if matches!(self.peek(), Tok::Sym("*")) {
                    self.next();
                }
            }
            if let Tok::Ident(s) = self.peek().clone() {
                self.next();
                if let Some(p) = &param {
                    if *p != s {
                        return Err(Error::MalformedSchema(format!(
                            "more than one parameter ({p}, {s})"
                        )));
                    }
                }
                param = Some(s);
                slope += sign * coef;
            } else if has_int {
                offset += sign * coef;
            } else {
                return self.err("malformed exponent");
            }
            if self.eat("+") {
                sign = 1;
            } else if self.eat("-") {
                sign = -1;
            } else {
                break;
            }
        }
        if param.is_none() {
            return Ok(Exponent::Int(offset));
        }
        Ok(Exponent::Affine { slope, offset, param })
    }

    fn names_until_semicolon(&mut self) -> Result<Vec<(String, usize, usize)>> {
        let mut names = Vec::new();
        while !self.eat(";") {
            let (l, c) = self.here();
            let n = self.ident()?;
            names.push((n, l, c));
            self.eat(",");
        }
        Ok(names)
    }
}

struct PendingWitness {
    side: Side,
    terms: Vec<Term>,
}

struct Builder {
    generators: Vec<String>,
    parity: Vec<Option<Parity>>,
}

impl Builder {
    fn letter(&self, name: &str) -> Result<Letter> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| i as Letter)
            .ok_or_else(|| Error::UndeclaredGenerator(name.to_string()))
    }
}

fn int_exponent(f: &Factor) -> Result<usize> {
    match &f.exp {
        Exponent::Int(n) if *n >= 0 => Ok(*n as usize),
        Exponent::Int(_) => Err(Error::Syntax {
            line: f.line,
            column: f.column,
            message: "negative exponent".into(),
        }),
        Exponent::Affine { .. } => Err(Error::Syntax {
            line: f.line,
            column: f.column,
            message: "parametric exponent outside a schema".into(),
        }),
    }
}

fn terms_to_poly(b: &Builder, terms: &[Term]) -> Result<Polynomial> {
    let mut p = Polynomial::zero();
    for t in terms {
        let mut letters = Vec::new();
        for f in &t.factors {
            let l = b.letter(&f.name)?;
            letters.extend(std::iter::repeat_n(l, int_exponent(f)?));
        }
        p.add_term(Word::new(letters), t.coeff.clone());
    }
    Ok(p)
}

/// Parses an `.fpa` document.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut ps = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let mut b = Builder {
        generators: Vec::new(),
        parity: Vec::new(),
    };
    let mut relations: Vec<Polynomial> = Vec::new();
    let mut schemas: Vec<RelationSchema> = Vec::new();
    let mut idempotent: Option<(String, usize, usize)> = None;
    let mut witnesses: Vec<PendingWitness> = Vec::new();

    loop {
        let (line, column) = ps.here();
        let kw = match ps.peek().clone() {
            Tok::Eof => break,
            Tok::Ident(s) => s,
            _ => return ps.err("expected a statement keyword"),
        };
        ps.next();
        match kw.as_str() {
            "gens" => {
                for (n, l, c) in ps.names_until_semicolon()? {
                    if !is_identifier(&n) || KEYWORDS.contains(&n.as_str()) {
                        return Err(Error::Syntax {
                            line: l,
                            column: c,
                            message: format!("{n} is a reserved word"),
                        });
                    }
                    if b.generators.contains(&n) {
                        return Err(Error::DuplicateName(n));
                    }
                    b.generators.push(n);
                    b.parity.push(None);
                }
            }
            "odd" | "even" => {
                let par = if kw == "odd" { Parity::Odd } else { Parity::Even };
                let names = ps.names_until_semicolon()?;
                if names.is_empty() {
                    return Err(Error::Syntax {
                        line,
                        column,
                        message: format!("{kw} needs at least one name"),
                    });
                }
                for (n, _, _) in names {
                    let l = b.letter(&n)? as usize;
                    if b.parity[l].is_some_and(|q| q != par) {
                        return Err(Error::InvalidPresentation(format!(
                            "generator {n} declared both odd and even"
                        )));
                    }
                    b.parity[l] = Some(par);
                }
            }
            "rel" => {
                let lhs = ps.poly_expr()?;
                let mut p = terms_to_poly(&b, &lhs)?;
                if ps.eat("=") {
                    let rhs = ps.poly_expr()?;
                    let q = terms_to_poly(&b, &rhs)?;
                    p = &p - &q;
                }
                ps.expect(";")?;
                if p.is_zero() {
                    return Err(Error::ZeroRelation);
                }
                relations.push(p);
            }
            "schema" => {
                let pattern = ps.poly_expr()?;
                ps.expect("=")?;
                match ps.next() {
                    Tok::Int(z) if z.is_zero() => {}
                    _ => return ps.err("schema must read `pattern = 0`"),
                }
                match ps.next() {
                    Tok::Ident(s) if s == "for" => {}
                    _ => return ps.err("expected 'for'"),
                }
                let param = ps.ident()?;
                ps.expect(">=")?;
                let neg = ps.eat("-");
                let mut lower = ps.small_int()?;
                if neg {
                    lower = -lower;
                }
                ps.expect(";")?;
                let mut terms = Vec::new();
                for t in &pattern {
                    let mut factors = Vec::new();
                    for f in &t.factors {
                        let l = b.letter(&f.name)?;
                        let e = match &f.exp {
                            Exponent::Int(n) => AffineExponent::constant(*n),
                            Exponent::Affine {
                                slope,
                                offset,
                                param: q,
                            } => {
                                if q.as_deref() != Some(param.as_str()) {
                                    return Err(Error::MalformedSchema(format!(
                                        "exponent uses {} but the schema parameter is {param}",
                                        q.as_deref().unwrap_or("?")
                                    )));
                                }
                                AffineExponent {
                                    slope: *slope,
                                    offset: *offset,
                                }
                            }
                        };
                        factors.push((l, e));
                    }
                    terms.push(SchemaTerm {
                        coefficient: t.coeff.clone(),
                        factors,
                    });
                }
                schemas.push(RelationSchema::new(param, terms, lower)?);
            }
            "idempotent" => {
                let (l, c) = ps.here();
                let n = ps.ident()?;
                ps.expect(";")?;
                if idempotent.is_some() {
                    return Err(Error::InvalidPresentation(
                        "only one idempotent may be designated".into(),
                    ));
                }
                idempotent = Some((n, l, c));
            }
            "witness" => {
                let side = match ps.ident()?.as_str() {
                    "e" => Side::E,
                    "f" => Side::F,
                    _ => return ps.err("witness side must be e or f"),
                };
                ps.expect(":")?;
                match ps.next() {
                    Tok::Int(one) if one.is_one() => {}
                    _ => return ps.err("witness must read `1 = ...`"),
                }
                ps.expect("=")?;
                let terms = ps.poly_expr()?;
                ps.expect(";")?;
                if witnesses.iter().any(|w| w.side == side) {
                    return Err(Error::InvalidPresentation("duplicate witness statement".into()));
                }
                witnesses.push(PendingWitness { side, terms });
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: format!("unknown statement {other}"),
                })
            }
        }
    }

    let parity = if b.parity.iter().all(Option::is_none) {
        None
    } else if let Some(i) = b.parity.iter().position(Option::is_none) {
        return Err(Error::InvalidPresentation(format!(
            "generator {} has no parity while others do",
            b.generators[i]
        )));
    } else {
        Some(b.parity.iter().map(|p| p.unwrap()).collect())
    };

    let mut pres = Presentation::new(b.generators.clone())?;
    pres.set_parity(parity)?;
    for r in relations {
        pres.push_relation(r)?;
    }
    for s in schemas {
        pres.push_schema(s)?;
    }
    let e_letter = match &idempotent {
        Some((n, _, _)) => Some(b.letter(n)?),
        None => None,
    };
    pres.set_idempotent(e_letter)?;
    for w in witnesses {
        let e = e_letter.ok_or(Error::MissingIdempotent)?;
        let dec = resolve_witness(&b, &w, e)?;
        pres.set_witness(Some(dec), w.side)?;
    }
    Ok(pres)
}

fn resolve_witness(b: &Builder, w: &PendingWitness, e: Letter) -> Result<WitnessDecomposition> {
    let mut pairs = Vec::new();
    for t in &w.terms {
        match w.side {
            Side::E => {
                let mut letters = Vec::new();
                for f in &t.factors {
                    let l = b.letter(&f.name)?;
                    letters.extend(std::iter::repeat_n(l, int_exponent(f)?));
                }
                let word = Word::new(letters);
                let pos = word.find_factor(&[e]).ok_or_else(|| {
                    Error::InvalidPresentation(format!("witness e term without {}", b.generators[e as usize]))
                })?;
                pairs.push((
                    Polynomial::monomial(Word::from(&word.letters()[..pos]), t.coeff.clone()),
                    Polynomial::word(Word::from(&word.letters()[pos + 1..])),
                ));
            }
            Side::F => {
                let mut left = Vec::new();
                let mut right = Vec::new();
                let mut seen = false;
                for f in &t.factors {
                    if f.name == "f" {
                        if seen || int_exponent(f)? == 0 {
                            return Err(Error::InvalidPresentation(
                                "each witness f term must contain f exactly once".into(),
                            ));
                        }
                        seen = true;
                        continue;
                    }
                    let l = b.letter(&f.name)?;
                    let target = if seen { &mut right } else { &mut left };
                    target.extend(std::iter::repeat_n(l, int_exponent(f)?));
                }
                if !seen {
                    return Err(Error::InvalidPresentation("witness f term without f".into()));
                }
                pairs.push((
                    Polynomial::monomial(Word::new(left), t.coeff.clone()),
                    Polynomial::word(Word::new(right)),
                ));
            }
        }
    }
    WitnessDecomposition::new(w.side, pairs, e)
}

/// Parses a polynomial over the generators of `p`.
pub fn parse_polynomial(p: &Presentation, text: &str) -> Result<Polynomial> {
    let mut ps = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let terms = ps.poly_expr()?;
    if !matches!(ps.peek(), Tok::Eof) {
        return ps.err("trailing input after polynomial");
    }
    let b = Builder {
        generators: p.generators().to_vec(),
        parity: Vec::new(),
    };
    terms_to_poly(&b, &terms)
}
