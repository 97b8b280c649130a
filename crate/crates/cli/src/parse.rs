//! Expression syntax: the inverse of the canonical printers.
//!
//! ```text
//! sum     := ["+"|"-"] tensor (("+"|"-") tensor)*
//! tensor  := product ["(x)" product]
//! product := [scalar ["*"]] factor*
//! factor  := GEN | "(" sum ")"
//! scalar  := rat ["*"? "w"] | "w" | rat ("+"|"-") rat "*"? "w"   (last form without spaces)
//! ```
//!
//! Juxtaposition is the algebra product. In Wick expressions it is the Wick
//! product, so `X1 T1` evaluates the cross symmetry.

use std::str::FromStr;

use rga_core::bialgebra::{tensor_mul, SignConvention, TensorElement};
use rga_core::wick::{wick_mul, CrossSymmetry, WickElement};
use rga_core::{Alphabet, Element, Scalar, Word};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },

    #[error("unknown generator {name} at column {col} (n = {n})")]
    UnknownGenerator { col: usize, name: String, n: usize },

    #[error(transparent)]
    Eval(#[from] rga_core::Error),
}

type Result<T> = std::result::Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Omega,
    Gen(char, usize),
    Plus,
    Minus,
    Star,
    Open,
    Close,
    TensorMark,
}

fn syntax(col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        col,
        msg: msg.into(),
    }
}

/// Length of a space-free compound scalar such as `1+2/3*w` at the start of `s`.
fn compound_scalar_len(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    let digits = |mut i: usize| {
        let start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        (i > start).then_some(i)
    };
    let rat = |i: usize| {
        let i = digits(i)?;
        if b.get(i) == Some(&b'/') {
            digits(i + 1)
        } else {
            Some(i)
        }
    };
    let mut i = rat(0)?;
    if !matches!(b.get(i), Some(b'+' | b'-')) {
        return None;
    }
    i = rat(i + 1)?;
    if b.get(i) == Some(&b'*') {
        i += 1;
    }
    if b.get(i) != Some(&b'w') {
        return None;
    }
    i += 1;
    match b.get(i) {
        Some(c) if c.is_ascii_alphanumeric() => None,
        _ => Some(i),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let b = text.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let col = i + 1;
        let c = b[i] as char;
        match c {
            c if c.is_ascii_whitespace() => i += 1,
            '+' => {
                out.push((col, Tok::Plus));
                i += 1;
            }
            '-' => {
                // a sign that opens an operand belongs to a following compound scalar
                let opens = matches!(
                    out.last(),
                    None | Some((_, Tok::Open | Tok::Plus | Tok::Minus | Tok::TensorMark))
                );
                match compound_scalar_len(&text[i + 1..]).filter(|_| opens) {
                    Some(len) => {
                        out.push((col, Tok::Num(text[i..i + 1 + len].to_string())));
                        i += 1 + len;
                    }
                    None => {
                        out.push((col, Tok::Minus));
                        i += 1;
                    }
                }
            }
            '*' => {
                out.push((col, Tok::Star));
                i += 1;
            }
            ')' => {
                out.push((col, Tok::Close));
                i += 1;
            }
            '(' if text[i..].starts_with("(x)") => {
                out.push((col, Tok::TensorMark));
                i += 3;
            }
            '(' => {
                out.push((col, Tok::Open));
                i += 1;
            }
            'w' => {
                out.push((col, Tok::Omega));
                i += 1;
            }
            'T' | 'X' => {
                let start = i + 1;
                let mut j = start;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(syntax(col, format!("expected an index after {c}")));
                }
                let idx = text[start..j]
                    .parse()
                    .map_err(|_| syntax(col, "generator index too large"))?;
                out.push((col, Tok::Gen(c, idx)));
                i = j;
            }
            '0'..='9' => {
                if let Some(len) = compound_scalar_len(&text[i..]) {
                    out.push((col, Tok::Num(text[i..i + len].to_string())));
                    i += len;
                    continue;
                }
                let mut j = i;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                if j < b.len() && b[j] == b'/' {
                    let k = j + 1;
                    j = k;
                    while j < b.len() && b[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == k {
                        return Err(syntax(j + 1, "expected a denominator"));
                    }
                }
                out.push((col, Tok::Num(text[i..j].to_string())));
                i = j;
            }
            other => return Err(syntax(col, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Scalar(Scalar),
    Gen {
        col: usize,
        symbol: char,
        index: usize,
    },
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut neg = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            terms.push((neg, self.tensor()?));
            neg = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.bump();
        }
        Ok(Expr::Sum(terms))
    }

    fn tensor(&mut self) -> Result<Expr> {
        let left = self.product()?;
        if self.peek() == Some(&Tok::TensorMark) {
            self.bump();
            let right = self.product()?;
            if self.peek() == Some(&Tok::TensorMark) {
                return Err(syntax(self.col(), "only two tensor factors are supported"));
            }
            return Ok(Expr::Tensor(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn scalar(&mut self) -> Result<Option<Scalar>> {
        let col = self.col();
        let value = match self.peek().cloned() {
            Some(Tok::Omega) => {
                self.bump();
                Scalar::omega()
            }
            Some(Tok::Num(text)) => {
                self.bump();
                let canonical = match text.strip_suffix('w') {
                    Some(body) if !body.ends_with('*') => format!("{body}*w"),
                    _ => text.clone(),
                };
                let mut s = Scalar::from_str(&canonical)
                    .map_err(|_| syntax(col, format!("bad scalar {text:?}")))?;
                let omega_next = match (self.peek(), self.peek_at(1)) {
                    (Some(Tok::Omega), _) => 1,
                    (Some(Tok::Star), Some(Tok::Omega)) => 2,
                    _ => 0,
                };
                if omega_next > 0 && !text.contains('w') {
                    self.pos += omega_next;
                    s = &s * &Scalar::omega();
                }
                s
            }
            _ => return Ok(None),
        };
        if self.peek() == Some(&Tok::Star) {
            self.bump();
            if !matches!(self.peek(), Some(Tok::Gen(..) | Tok::Open)) {
                return Err(syntax(self.col(), "expected a factor after '*'"));
            }
        }
        Ok(Some(value))
    }

    fn product(&mut self) -> Result<Expr> {
        let start = self.col();
        let mut factors = Vec::new();
        if let Some(s) = self.scalar()? {
            factors.push(Expr::Scalar(s));
        }
        loop {
            match self.peek().cloned() {
                Some(Tok::Gen(symbol, index)) => {
                    factors.push(Expr::Gen {
                        col: self.col(),
                        symbol,
                        index,
                    });
                    self.bump();
                }
                Some(Tok::Open) => {
                    self.bump();
                    let inner = self.sum()?;
                    if self.peek() != Some(&Tok::Close) {
                        return Err(syntax(self.col(), "expected ')'"));
                    }
                    self.bump();
                    factors.push(inner);
                }
                _ => break,
            }
        }
        if factors.is_empty() {
            return Err(syntax(start, "expected a term"));
        }
        Ok(Expr::Product(factors))
    }
}

fn parse_expr(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len() + 1,
    };
    let e = p.sum()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.col(), "unexpected token"));
    }
    Ok(e)
}

/// What an expression evaluates into.
trait Target {
    type V: Clone;
    fn scalar(&self, s: &Scalar) -> Self::V;
    fn generator(&self, col: usize, symbol: char, index: usize) -> Result<Self::V>;
    fn tensor(&self, left: &Expr, right: &Expr) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
}

fn eval<T: Target>(t: &T, e: &Expr) -> Result<T::V> {
    match e {
        Expr::Scalar(s) => Ok(t.scalar(s)),
        Expr::Gen { col, symbol, index } => t.generator(*col, *symbol, *index),
        Expr::Tensor(l, r) => t.tensor(l, r),
        Expr::Product(fs) => {
            let mut acc = t.scalar(&Scalar::one());
            for f in fs {
                acc = t.mul(&acc, &eval(t, f)?)?;
            }
            Ok(acc)
        }
        Expr::Sum(terms) => {
            let mut acc = t.scalar(&Scalar::zero());
            for (neg, term) in terms {
                let v = eval(t, term)?;
                acc = t.add(&acc, &if *neg { t.neg(&v) } else { v })?;
            }
            Ok(acc)
        }
    }
}

fn check_index(col: usize, symbol: char, index: usize, n: usize) -> Result<()> {
    if index == 0 || index > n {
        return Err(ParseError::UnknownGenerator {
            col,
            name: format!("{symbol}{index}"),
            n,
        });
    }
    Ok(())
}

struct ElementTarget {
    n: usize,
    alphabet: Alphabet,
}

impl Target for ElementTarget {
    type V = Element;

    fn scalar(&self, s: &Scalar) -> Element {
        Element::scalar(self.n, self.alphabet, s.clone())
    }

    fn generator(&self, col: usize, symbol: char, index: usize) -> Result<Element> {
        if symbol != self.alphabet.symbol() {
            return Err(syntax(
                col,
                format!(
                    "generator {symbol}{index} in a {} expression",
                    self.alphabet.symbol()
                ),
            ));
        }
        check_index(col, symbol, index, self.n)?;
        Ok(Element::generator(self.n, self.alphabet, index)?)
    }

    fn tensor(&self, left: &Expr, _: &Expr) -> Result<Element> {
        Err(syntax(first_col(left), "'(x)' is not allowed here"))
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(a.checked_add(b)?)
    }

    fn neg(&self, a: &Element) -> Element {
        -a
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(a.checked_mul(b)?)
    }
}

fn first_col(e: &Expr) -> usize {
    match e {
        Expr::Gen { col, .. } => *col,
        Expr::Sum(ts) => ts.first().map_or(1, |(_, t)| first_col(t)),
        Expr::Product(fs) => fs.iter().map(first_col).find(|&c| c > 1).unwrap_or(1),
        Expr::Tensor(l, _) => first_col(l),
        Expr::Scalar(_) => 1,
    }
}

fn symbols(e: &Expr, out: &mut Vec<char>) {
    match e {
        Expr::Gen { symbol, .. } => {
            if !out.contains(symbol) {
                out.push(*symbol)
            }
        }
        Expr::Sum(ts) => ts.iter().for_each(|(_, t)| symbols(t, out)),
        Expr::Product(fs) => fs.iter().for_each(|f| symbols(f, out)),
        Expr::Tensor(l, r) => {
            symbols(l, out);
            symbols(r, out);
        }
        Expr::Scalar(_) => {}
    }
}

fn side(n: usize, alphabet: Alphabet, e: &Expr) -> Result<Element> {
    eval(&ElementTarget { n, alphabet }, e)
}

/// Parses an element over `alphabet`.
pub fn parse_element_in(text: &str, n: usize, alphabet: Alphabet) -> Result<Element> {
    side(n, alphabet, &parse_expr(text)?)
}

/// Parses an element, taking the alphabet from its generators (Θ if it has none).
pub fn parse_element(text: &str, n: usize) -> Result<Element> {
    let e = parse_expr(text)?;
    let mut syms = Vec::new();
    symbols(&e, &mut syms);
    let alphabet = match syms.as_slice() {
        ['X'] => Alphabet::Xi,
        [_, _] => return Err(syntax(1, "expression mixes T and X generators")),
        _ => Alphabet::Theta,
    };
    side(n, alphabet, &e)
}

struct TensorTarget {
    n: usize,
    alphabets: (Alphabet, Alphabet),
    signs: SignConvention,
}

impl Target for TensorTarget {
    type V = TensorElement;

    fn scalar(&self, s: &Scalar) -> TensorElement {
        TensorElement::from_terms(
            self.n,
            self.alphabets,
            self.signs,
            [(Word::unit(), Word::unit(), s.clone())],
        )
        .expect("unit words are valid")
    }

    fn generator(&self, col: usize, symbol: char, index: usize) -> Result<TensorElement> {
        Err(syntax(
            col,
            format!("generator {symbol}{index} outside a tensor factor"),
        ))
    }

    fn tensor(&self, left: &Expr, right: &Expr) -> Result<TensorElement> {
        let a = side(self.n, self.alphabets.0, left)?;
        let b = side(self.n, self.alphabets.1, right)?;
        Ok(TensorElement::pure(&a, &b, self.signs)?)
    }

    fn add(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        Ok(a.checked_add(b)?)
    }

    fn neg(&self, a: &TensorElement) -> TensorElement {
        a.scale(&Scalar::int(-1))
    }

    fn mul(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        Ok(tensor_mul(a, b)?)
    }
}

/// Parses a tensor expression; juxtaposed tensors multiply with the given signs.
pub fn parse_tensor(
    text: &str,
    n: usize,
    alphabets: (Alphabet, Alphabet),
    signs: SignConvention,
) -> Result<TensorElement> {
    eval(
        &TensorTarget {
            n,
            alphabets,
            signs,
        },
        &parse_expr(text)?,
    )
}

struct WickTarget<'a> {
    n: usize,
    psi: &'a CrossSymmetry,
}

impl Target for WickTarget<'_> {
    type V = WickElement;

    fn scalar(&self, s: &Scalar) -> WickElement {
        WickElement::one(self.n).scale(s)
    }

    fn generator(&self, col: usize, symbol: char, index: usize) -> Result<WickElement> {
        check_index(col, symbol, index, self.n)?;
        let g = Word::generator(index);
        Ok(match symbol {
            'T' => WickElement::basis(self.n, g, Word::unit()),
            _ => WickElement::basis(self.n, Word::unit(), g),
        })
    }

    fn tensor(&self, left: &Expr, right: &Expr) -> Result<WickElement> {
        let a = side(self.n, Alphabet::Theta, left)?;
        let xi = side(self.n, Alphabet::Xi, right)?;
        Ok(WickElement::pure(&a, &xi)?)
    }

    fn add(&self, a: &WickElement, b: &WickElement) -> Result<WickElement> {
        Ok(a.checked_add(b)?)
    }

    fn neg(&self, a: &WickElement) -> WickElement {
        a.scale(&Scalar::int(-1))
    }

    fn mul(&self, a: &WickElement, b: &WickElement) -> Result<WickElement> {
        Ok(wick_mul(a, b, self.psi)?)
    }
}

/// Parses a Wick expression over `n` generators. Bare `Ti` stands for `Ti (x) 1`
/// and bare `Xi` for `1 (x) Xi`; juxtaposition is the Wick product under `psi`.
pub fn parse_wick(text: &str, n: usize, psi: &CrossSymmetry) -> Result<WickElement> {
    eval(&WickTarget { n, psi }, &parse_expr(text)?)
}

/// A single basis word: `1`, `T1 T2`, `X2 X1`. The alphabet is returned with it.
pub fn parse_word(text: &str) -> Result<(Word, Option<Alphabet>)> {
    let toks = lex(text)?;
    if let [(_, Tok::Num(s))] = toks.as_slice() {
        if s == "1" {
            return Ok((Word::unit(), None));
        }
    }
    let mut letters = Vec::new();
    let mut alphabet = None;
    for (col, t) in toks {
        let Tok::Gen(symbol, index) = t else {
            return Err(syntax(col, "expected a generator"));
        };
        if index == 0 {
            return Err(syntax(col, "generator indices start at 1"));
        }
        let a = if symbol == 'T' {
            Alphabet::Theta
        } else {
            Alphabet::Xi
        };
        if alphabet.is_some_and(|b| b != a) {
            return Err(syntax(col, "word mixes T and X generators"));
        }
        alphabet = Some(a);
        letters.push(index);
    }
    if letters.is_empty() {
        return Err(syntax(1, "empty word"));
    }
    Ok((Word::new(letters), alphabet))
}

/// Letters for `nf`: either generators (`T1 T2 T1`) or bare indices (`1 2 1`).
pub fn parse_letters(text: &str) -> Result<Word> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Ok(Word::unit());
    }
    if toks.iter().all(|(_, t)| matches!(t, Tok::Num(_))) {
        let letters = toks
            .iter()
            .map(|(col, t)| match t {
                Tok::Num(s) => s
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i > 0)
                    .ok_or_else(|| syntax(*col, format!("bad letter {s:?}"))),
                _ => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Word::new(letters));
    }
    parse_word(text).map(|(w, _)| w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rga_core::wick::Vacuum;

    fn t(w: &[usize]) -> Element {
        Element::word(2, Alphabet::Theta, &Word::from(w)).unwrap()
    }

    #[test]
    fn products_reduce() {
        assert_eq!(parse_element("T1 T2 T1", 2).unwrap(), t(&[1]));
        assert!(parse_element("T1 T1", 2).unwrap().is_zero());
    }

    #[test]
    fn scalars() {
        let e = parse_element("1 + 1/2*w T1", 2).unwrap();
        let half_w = &Scalar::rational(1, 2) * &Scalar::omega();
        assert_eq!(
            e,
            &Element::one(2, Alphabet::Theta) + &t(&[1]).scale(&half_w)
        );
        let c = parse_element("1+2/3*w T1", 2).unwrap();
        assert_eq!(c, t(&[1]).scale(&Scalar::from_ratios((1, 1), (2, 3))));
        assert_eq!(
            parse_element("(1-2*w) T2", 2).unwrap(),
            t(&[2]).scale(&Scalar::from_ratios((1, 1), (-2, 1)))
        );
        assert_eq!(
            parse_element("(-1-1*w) T2", 2).unwrap(),
            t(&[2]).scale(&Scalar::from_ratios((-1, 1), (-1, 1)))
        );
        assert_eq!(
            parse_element("T1 - 1-1*w T2", 2).unwrap(),
            &t(&[1]) - &t(&[2]).scale(&Scalar::from_ratios((1, 1), (-1, 1)))
        );
        assert_eq!(
            parse_element("2*T1", 2).unwrap(),
            t(&[1]).scale(&Scalar::int(2))
        );
        assert_eq!(parse_element("w", 2).unwrap().to_string(), "1*w");
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(
            parse_element("T1 + T3", 2).unwrap_err(),
            ParseError::UnknownGenerator {
                col: 6,
                name: "T3".into(),
                n: 2
            }
        );
        assert!(matches!(
            parse_element("T1 + ", 2),
            Err(ParseError::Syntax { col: 6, .. })
        ));
        assert!(matches!(
            parse_element("T1 ? T2", 2),
            Err(ParseError::Syntax { col: 4, .. })
        ));
        assert!(parse_element("T1 X1", 2).is_err());
        assert!(parse_element("(T1", 2).is_err());
    }

    #[test]
    fn wick_expressions() {
        let psi = CrossSymmetry::regular(Vacuum::Unit);
        let v = parse_wick("X1 T1 T2", 2, &psi).unwrap();
        assert_eq!(v.to_string(), "T2 (x) 1 - T1 T2 (x) X1");
        let back = parse_wick(&v.to_string(), 2, &psi).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn tensors() {
        let s = "2 (x) 1 + 1*w T2 (x) 1 - T1 T2 (x) T1";
        let v = parse_tensor(
            s,
            2,
            (Alphabet::Theta, Alphabet::Theta),
            SignConvention::Plain,
        )
        .unwrap();
        assert_eq!(v.to_string(), s);
    }

    #[test]
    fn words_and_letters() {
        assert_eq!(parse_word("1").unwrap(), (Word::unit(), None));
        assert_eq!(
            parse_word("X2 X1").unwrap(),
            (Word::from([2, 1]), Some(Alphabet::Xi))
        );
        assert_eq!(parse_letters("1 2 1").unwrap(), Word::from([1, 2, 1]));
        assert_eq!(parse_letters("T1 T2").unwrap(), Word::from([1, 2]));
    }
}
