//! Elements of a regular graded algebra: finite ℚ(ω)-combinations of
//! normal-form words.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rewrite::{parity, RewriteSystem, Word};
use crate::scalar::Scalar;

/// Which generator family an element is written in: `T<i>` for Θ, `X<i>` for Ξ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    Theta,
    Xi,
}

impl Alphabet {
    pub fn symbol(self) -> char {
        match self {
            Alphabet::Theta => 'T',
            Alphabet::Xi => 'X',
        }
    }

    pub fn other(self) -> Alphabet {
        match self {
            Alphabet::Theta => Alphabet::Xi,
            Alphabet::Xi => Alphabet::Theta,
        }
    }

    /// Normal form of `w` in this alphabet's algebra. Ξ words live in the
    /// opposite algebra, so they are reduced right to left; for two
    /// generators every relation is a palindrome and the two coincide.
    pub fn normal_form(self, sys: &RewriteSystem, w: &Word) -> Result<Option<Word>> {
        match self {
            Alphabet::Theta => sys.normal_form(w),
            Alphabet::Xi => Ok(sys.normal_form(&w.reversed())?.map(|v| v.reversed())),
        }
    }
}

/// Index of each word in the five-word basis of RGA(2): (1, Θ₁, Θ₂, Θ₁Θ₂, Θ₂Θ₁).
pub fn basis2() -> [Word; 5] {
    [
        Word::unit(),
        Word::from([1]),
        Word::from([2]),
        Word::from([1, 2]),
        Word::from([2, 1]),
    ]
}

#[derive(Clone)]
pub struct Element {
    sys: RewriteSystem,
    alphabet: Alphabet,
    terms: BTreeMap<Word, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.sys.n() == other.sys.n()
            && self.alphabet == other.alphabet
            && self.terms == other.terms
    }
}

impl Eq for Element {}

impl std::hash::Hash for Element {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.sys.n().hash(state);
        self.alphabet.hash(state);
        self.terms.hash(state);
    }
}

impl Element {
    pub fn zero(n: usize, alphabet: Alphabet) -> Self {
        Element {
            sys: RewriteSystem::new(n),
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n: usize, alphabet: Alphabet, c: Scalar) -> Self {
        let mut e = Element::zero(n, alphabet);
        e.push(Word::unit(), c);
        e
    }

    pub fn one(n: usize, alphabet: Alphabet) -> Self {
        Element::scalar(n, alphabet, Scalar::one())
    }

    /// The word's class in the algebra (zero if it reduces to zero).
    pub fn word(n: usize, alphabet: Alphabet, w: &Word) -> Result<Self> {
        Element::from_terms(n, alphabet, [(w.clone(), Scalar::one())])
    }

    pub fn generator(n: usize, alphabet: Alphabet, i: usize) -> Result<Self> {
        Element::word(n, alphabet, &Word::generator(i))
    }

    /// Sums `c·w` over the given terms, reducing every word first.
    pub fn from_terms<I>(n: usize, alphabet: Alphabet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut e = Element::zero(n, alphabet);
        for (w, c) in terms {
            if let Some(nf) = alphabet.normal_form(&e.sys, &w)? {
                e.push(nf, c);
            }
        }
        Ok(e)
    }

    /// Builds `a₀ + a₁Θ₁ + a₂Θ₂ + a₁₂Θ₁Θ₂ + a₂₁Θ₂Θ₁`.
    pub fn from_components2(alphabet: Alphabet, c: [Scalar; 5]) -> Self {
        let mut e = Element::zero(2, alphabet);
        for (w, c) in basis2().into_iter().zip(c) {
            e.push(w, c);
        }
        e
    }

    /// Coefficients on the RGA(2) basis (1, Θ₁, Θ₂, Θ₁Θ₂, Θ₂Θ₁).
    pub fn components2(&self) -> Result<[Scalar; 5]> {
        if self.n() != 2 {
            return Err(Error::NeedsTwoGenerators(self.n()));
        }
        Ok(basis2().map(|w| self.coefficient(&w)))
    }

    // Adds `c·w` for a word already in normal form.
    fn push(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn system(&self) -> RewriteSystem {
        self.sys
    }

    pub fn n(&self) -> usize {
        self.sys.n()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Same coefficients read in the other generator family.
    /// Relabel the generators and reduce in the new alphabet's order.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Self {
        Element::from_terms(
            self.n(),
            alphabet,
            self.terms.iter().map(|(w, c)| (w.clone(), c.clone())),
        )
        .expect("letters stay in range")
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parity if every term has the same parity; the zero element is even.
    pub fn homogeneous_parity(&self) -> Option<u8> {
        let mut ps = self.terms.keys().map(parity);
        let first = ps.next().unwrap_or(0);
        ps.all(|p| p == first).then_some(first)
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if self.n() != other.n() || self.alphabet != other.alphabet {
            return Err(Error::AlgebraMismatch(format!(
                "{}-generator {:?} vs {}-generator {:?}",
                self.n(),
                self.alphabet,
                other.n(),
                other.alphabet
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.push(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.checked_add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        let mut out = Element {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        if s.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(w, c)| (w.clone(), s * c)).collect();
        out
    }

    /// Bilinear extension of concatenation followed by reduction.
    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut out = Element::zero(self.n(), self.alphabet);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if let Some(w) = self.alphabet.normal_form(&self.sys, &u.concat(v))? {
                    out.push(w, a * b);
                }
            }
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        let mut out = Element {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (w, c) in &self.terms {
            out.push(w.clone(), f(c));
        }
        out
    }
}

impl Add for &Element {
    type Output = Element;
    /// Panics on algebra mismatch; use [`Element::checked_add`] to handle it.
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs)
            .expect("adding elements of different algebras")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.checked_sub(rhs)
            .expect("subtracting elements of different algebras")
    }
}

impl Mul for &Element {
    type Output = Element;
    /// Panics on algebra mismatch; use [`Element::checked_mul`] to handle it.
    fn mul(self, rhs: &Element) -> Element {
        self.checked_mul(rhs)
            .expect("multiplying elements of different algebras")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Scalar::int(-1))
    }
}

/// Splits a coefficient into a sign and the text printed after it, or
/// `None` when the coefficient needs parentheses.
pub(crate) fn signed_coefficient(c: &Scalar) -> Option<(bool, Scalar)> {
    use num_traits::{Signed, Zero};
    if c.is_rational() {
        Some((
            c.re().is_negative(),
            if c.re().is_negative() { -c } else { c.clone() },
        ))
    } else if c.re().is_zero() {
        Some((
            c.om().is_negative(),
            if c.om().is_negative() { -c } else { c.clone() },
        ))
    } else {
        None
    }
}

/// Writes `sum c_i · body_i` in canonical form. `body` is `None` for the unit
/// monomial, in which case the coefficient stands alone.
pub(crate) fn write_sum<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Scalar, Option<String>)>,
{
    write_sum_with(f, terms.into_iter().map(|(c, b)| (c, b, String::new())))
}

/// Like [`write_sum`], appending a fixed suffix to each term's text.
pub(crate) fn write_sum_with<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Scalar, Option<String>, String)>,
{
    let mut first = true;
    for (c, body, suffix) in terms {
        let (neg, text) = match (signed_coefficient(c), body) {
            (Some((neg, abs)), None) => (neg, abs.to_string()),
            (Some((neg, abs)), Some(b)) if abs.is_one() => (neg, b),
            (Some((neg, abs)), Some(b)) => (neg, format!("{abs} {b}")),
            (None, None) if first => (false, c.to_string()),
            (None, None) => (false, format!("({c})")),
            (None, Some(b)) => (false, format!("({c}) {b}")),
        };
        match (first, neg) {
            (true, false) => write!(f, "{text}{suffix}")?,
            (true, true) => write!(f, "-{text}{suffix}")?,
            (false, false) => write!(f, " + {text}{suffix}")?,
            (false, true) => write!(f, " - {text}{suffix}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.alphabet.symbol();
        write_sum(
            f,
            self.terms
                .iter()
                .map(|(w, c)| (c, (!w.is_unit()).then(|| w.render(sym)))),
        )
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[n={}]({self})", self.n())
    }
}
