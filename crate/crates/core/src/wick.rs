//! The conjugation `†` between the Θ and Ξ copies of RGA(2), the cross
//! symmetry `Ψ: A^† ⊗ A → A ⊗ A^†` extended from generator values, and the
//! Wick product on `A ⊗ A^†`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use crate::bialgebra::{SignConvention, TensorElement};
use crate::element::{Alphabet, Element};
use crate::error::{Error, Result};
use crate::rewrite::{RewriteSystem, Word};
use crate::scalar::Scalar;

/// Antilinear anti-isomorphism: reverses words, swaps Θ and Ξ, and
/// conjugates scalars. It is its own inverse.
pub fn dagger(a: &Element) -> Element {
    Element::from_terms(
        a.n(),
        a.alphabet().other(),
        a.terms().map(|(w, c)| (w.reversed(), c.conj())),
    )
    .expect("reversed normal words stay valid")
}

/// `dagger ∘ e ∘ dagger` for an element map `e` on the Θ side.
pub fn conjugate_map(
    e: impl Fn(&Element) -> Result<Element>,
) -> impl Fn(&Element) -> Result<Element> {
    move |xi| Ok(dagger(&e(&dagger(xi))?))
}

/// Element of `A ⊗ A^†`: Θ words on the left leg, Ξ words on the right.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WickElement(TensorElement);

impl WickElement {
    pub fn zero(n: usize) -> Self {
        WickElement(TensorElement::zero(
            n,
            (Alphabet::Theta, Alphabet::Xi),
            SignConvention::Plain,
        ))
    }

    pub fn one(n: usize) -> Self {
        WickElement::basis(n, Word::unit(), Word::unit())
    }

    /// `u ⊗ ξ` for normal words.
    pub fn basis(n: usize, theta: Word, xi: Word) -> Self {
        WickElement::from_terms(n, [(theta, xi, Scalar::one())]).expect("valid basis words")
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Word, Scalar)>,
    {
        TensorElement::from_terms(
            n,
            (Alphabet::Theta, Alphabet::Xi),
            SignConvention::Plain,
            terms,
        )
        .map(WickElement)
    }

    /// `a ⊗ ξ` with `a` over Θ and `ξ` over Ξ.
    pub fn pure(a: &Element, xi: &Element) -> Result<Self> {
        if a.alphabet() != Alphabet::Theta || xi.alphabet() != Alphabet::Xi {
            return Err(Error::AlgebraMismatch("Wick elements are Θ ⊗ Ξ".into()));
        }
        TensorElement::pure(a, xi, SignConvention::Plain).map(WickElement)
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &Scalar)> {
        self.0.terms()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_tensor(&self) -> &TensorElement {
        &self.0
    }

    pub fn checked_add(&self, other: &WickElement) -> Result<WickElement> {
        self.0.checked_add(&other.0).map(WickElement)
    }

    pub fn checked_sub(&self, other: &WickElement) -> Result<WickElement> {
        self.0.checked_sub(&other.0).map(WickElement)
    }

    pub fn scale(&self, s: &Scalar) -> WickElement {
        WickElement(self.0.scale(s))
    }

    /// `Σ c · f(u) ⊗ g(ξ)`, applied per basis term.
    pub fn map_legs(
        &self,
        f: impl Fn(&Element) -> Result<Element>,
        g: impl Fn(&Element) -> Result<Element>,
    ) -> Result<WickElement> {
        self.0.map_legs(f, g).map(WickElement)
    }
}

impl fmt::Display for WickElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for WickElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WickElement({})", self.0)
    }
}

/// Interpretation of `e_{Xᵢ}` in `Ψ(Ξᵢ⊗Θᵢ) = e_{Xᵢ} − Θᵢ⊗Ξᵢ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Vacuum {
    /// `1 ⊗ 1`
    #[default]
    Unit,
    /// `E₁₂ ⊗ 1` and `E₂₁ ⊗ 1`
    Idempotent,
}

impl Vacuum {
    pub fn element(self, i: usize) -> WickElement {
        match self {
            Vacuum::Unit => WickElement::one(2),
            Vacuum::Idempotent => {
                let w = if i == 1 { vec![1, 2] } else { vec![2, 1] };
                WickElement::basis(2, Word::new(w), Word::unit())
            }
        }
    }
}

/// A disagreement between two ways of evaluating `Ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceWitness {
    pub xi: Word,
    pub theta: Word,
    /// 1 for splitting the Θ word, 2 for splitting the Ξ word.
    pub law: u8,
    /// Length of the left factor of the split.
    pub split: usize,
    pub expected: WickElement,
    pub found: WickElement,
}

impl fmt::Display for CoherenceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Psi({} (x) {}) law {} split {}: {} != {}",
            self.xi.render('X'),
            self.theta.render('T'),
            self.law,
            self.split,
            self.expected,
            self.found
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub max_deg: usize,
    pub checked: usize,
    pub witnesses: Vec<CoherenceWitness>,
}

impl CoherenceReport {
    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "max degree: {}\nfactorizations checked: {}\n",
            self.max_deg, self.checked
        );
        for w in &self.witnesses {
            out.push_str(&format!("incoherent: {w}\n"));
        }
        out.push_str(&format!(
            "coherent: {} (witnesses: {})\n",
            self.holds(),
            self.witnesses.len()
        ));
        out
    }
}

/// `Ψ` on generator pairs, extended to all words by the two factorization laws.
pub struct CrossSymmetry {
    base: BTreeMap<(usize, usize), WickElement>,
    coherence: Mutex<BTreeMap<usize, Option<CoherenceWitness>>>,
}

impl Clone for CrossSymmetry {
    fn clone(&self) -> Self {
        CrossSymmetry {
            base: self.base.clone(),
            coherence: Mutex::new(self.coherence.lock().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for CrossSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.base
                    .iter()
                    .map(|((i, j), v)| (format!("X{i} (x) T{j}"), v.to_string())),
            )
            .finish()
    }
}

impl PartialEq for CrossSymmetry {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
    }
}

impl CrossSymmetry {
    /// Base values keyed by `(Ξ index, Θ index)`; all four pairs are required.
    pub fn new(base: BTreeMap<(usize, usize), WickElement>) -> Result<Self> {
        for i in 1..=2 {
            for j in 1..=2 {
                if !base.contains_key(&(i, j)) {
                    return Err(Error::IncompleteBase(i, j));
                }
            }
        }
        Ok(CrossSymmetry {
            base,
            coherence: Mutex::new(BTreeMap::new()),
        })
    }

    /// `Ψ(Ξᵢ⊗Θᵢ) = vacᵢ − Θᵢ⊗Ξᵢ`, `Ψ(Ξᵢ⊗Θⱼ) = Θⱼ⊗Ξᵢ` for `i ≠ j`.
    pub fn regular(vacuum: Vacuum) -> Self {
        let mut base = BTreeMap::new();
        for i in 1..=2 {
            for j in 1..=2 {
                let flip = WickElement::basis(2, Word::generator(j), Word::generator(i));
                let v = if i == j {
                    vacuum.element(i).checked_sub(&flip).expect("same shape")
                } else {
                    flip
                };
                base.insert((i, j), v);
            }
        }
        CrossSymmetry::new(base).expect("complete base")
    }

    /// `Ψ(Ξᵢ⊗Θⱼ) = Θⱼ⊗Ξᵢ`.
    pub fn flip() -> Self {
        let base = (1..=2)
            .flat_map(|i| (1..=2).map(move |j| (i, j)))
            .map(|(i, j)| {
                (
                    (i, j),
                    WickElement::basis(2, Word::generator(j), Word::generator(i)),
                )
            })
            .collect();
        CrossSymmetry::new(base).expect("complete base")
    }

    /// Same base with one generator value replaced.
    pub fn with_value(&self, xi: usize, theta: usize, value: WickElement) -> Self {
        let mut base = self.base.clone();
        base.insert((xi, theta), value);
        CrossSymmetry::new(base).expect("replacing keeps the base complete")
    }

    pub fn base(&self) -> &BTreeMap<(usize, usize), WickElement> {
        &self.base
    }

    fn sys(&self) -> RewriteSystem {
        RewriteSystem::new(2)
    }

    /// `Ψ(ξ ⊗ a)` on normal words, peeling the last Θ letter first and then
    /// the last Ξ letter.
    pub fn psi(&self, xi: &Word, theta: &Word) -> Result<WickElement> {
        let sys = self.sys();
        sys.validate(xi)?;
        sys.validate(theta)?;
        if theta.is_unit() {
            return Ok(WickElement::basis(2, Word::unit(), xi.clone()));
        }
        if xi.is_unit() {
            return Ok(WickElement::basis(2, theta.clone(), Word::unit()));
        }
        let (tl, xl) = (theta.letters(), xi.letters());
        if tl.len() >= 2 {
            let a = Word::from(&tl[..tl.len() - 1]);
            let b = Word::from(&tl[tl.len() - 1..]);
            return self.law1(&self.psi(xi, &a)?, &b);
        }
        if xl.len() >= 2 {
            let head = Word::from(&xl[..xl.len() - 1]);
            let last = Word::from(&xl[xl.len() - 1..]);
            return self.law2(&head, &self.psi(&last, theta)?);
        }
        self.base
            .get(&(xl[0], tl[0]))
            .cloned()
            .ok_or(Error::IncompleteBase(xl[0], tl[0]))
    }

    /// `Σ a'·b'' ⊗ ξ''` where `first = Σ a'⊗ξ'` and `Ψ(ξ'⊗b) = Σ b''⊗ξ''`;
    /// `b` may be any word.
    fn law1(&self, first: &WickElement, b: &Word) -> Result<WickElement> {
        let mut out = WickElement::zero(2);
        for (a1, x1, c) in first.terms() {
            let a1 = Element::word(2, Alphabet::Theta, a1)?;
            let inner = self.psi_raw(x1, b)?;
            let left = |u: &Element| a1.checked_mul(u);
            out = out.checked_add(&inner.map_legs(left, |x| Ok(x.clone()))?.scale(c))?;
        }
        Ok(out)
    }

    /// `Σ a''⊗ξ''·η'` where `second = Ψ(η⊗a) = Σ a'⊗η'` and `Ψ(ξ⊗a') = Σ a''⊗ξ''`.
    fn law2(&self, xi: &Word, second: &WickElement) -> Result<WickElement> {
        let mut out = WickElement::zero(2);
        for (a1, eta1, c) in second.terms() {
            let eta1 = Element::word(2, Alphabet::Xi, eta1)?;
            let inner = self.psi_raw(xi, a1)?;
            let right = |x: &Element| x.checked_mul(&eta1);
            out = out.checked_add(&inner.map_legs(|u| Ok(u.clone()), right)?.scale(c))?;
        }
        Ok(out)
    }

    /// `Ψ` on arbitrary words, reducing them first (a zero word gives zero).
    fn psi_raw(&self, xi: &Word, theta: &Word) -> Result<WickElement> {
        let sys = self.sys();
        match (sys.normal_form(xi)?, sys.normal_form(theta)?) {
            (Some(x), Some(t)) => self.psi(&x, &t),
            _ => Ok(WickElement::zero(2)),
        }
    }

    /// Bilinear extension to `ξ ⊗ a` with `ξ` over Ξ and `a` over Θ.
    pub fn psi_elements(&self, xi: &Element, a: &Element) -> Result<WickElement> {
        if xi.alphabet() != Alphabet::Xi || a.alphabet() != Alphabet::Theta {
            return Err(Error::AlgebraMismatch("Ψ takes Ξ ⊗ Θ".into()));
        }
        let mut out = WickElement::zero(2);
        for (w, c) in xi.terms() {
            for (v, d) in a.terms() {
                out = out.checked_add(&self.psi(w, v)?.scale(&(c * d)))?;
            }
        }
        Ok(out)
    }

    /// Checks both laws for every factorization of every (not necessarily
    /// reduced) Ξ word and Θ word of length up to `max_deg`.
    pub fn check_coherence(&self, max_deg: usize) -> Result<CoherenceReport> {
        let words = raw_words(2, max_deg);
        let mut checked = 0;
        let mut witnesses = Vec::new();
        for xi in &words {
            for theta in &words {
                let expected = self.psi_raw(xi, theta)?;
                let tl = theta.letters();
                for k in 1..tl.len() {
                    checked += 1;
                    let (a, b) = (Word::from(&tl[..k]), Word::from(&tl[k..]));
                    let found = self.law1(&self.psi_raw(xi, &a)?, &b)?;
                    if found != expected {
                        witnesses.push(CoherenceWitness {
                            xi: xi.clone(),
                            theta: theta.clone(),
                            law: 1,
                            split: k,
                            expected: expected.clone(),
                            found,
                        });
                    }
                }
                let xl = xi.letters();
                for k in 1..xl.len() {
                    checked += 1;
                    let (x, eta) = (Word::from(&xl[..k]), Word::from(&xl[k..]));
                    let found = self.law2(&x, &self.psi_raw(&eta, theta)?)?;
                    if found != expected {
                        witnesses.push(CoherenceWitness {
                            xi: xi.clone(),
                            theta: theta.clone(),
                            law: 2,
                            split: k,
                            expected: expected.clone(),
                            found,
                        });
                    }
                }
            }
        }
        let report = CoherenceReport {
            max_deg,
            checked,
            witnesses,
        };
        self.coherence
            .lock()
            .expect("cache lock")
            .insert(max_deg, report.witnesses.first().cloned());
        Ok(report)
    }

    /// First incoherence up to `degree`, using cached verdicts.
    pub fn incoherence_at(&self, degree: usize) -> Result<Option<CoherenceWitness>> {
        if let Some(v) = self.coherence.lock().expect("cache lock").get(&degree) {
            return Ok(v.clone());
        }
        Ok(self.check_coherence(degree)?.witnesses.into_iter().next())
    }

    fn require_coherent(&self, degree: usize) -> Result<()> {
        match self.incoherence_at(degree.max(1))? {
            None => Ok(()),
            Some(w) => Err(Error::Incoherent {
                degree: degree.max(1),
                witness: w.to_string(),
            }),
        }
    }
}

/// All words over `1..=n` of length `1..=max_len`, reduced or not.
fn raw_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::unit()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (1..=n).map(move |i| w.concat(&Word::generator(i))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Total length `|b| + |c|` of the longest middle pair `Ψ(b⊗c)` a product needs.
fn middle_degree(x: &WickElement, y: &WickElement) -> usize {
    let b = x.terms().map(|(_, b, _)| b.len()).max().unwrap_or(0);
    let c = y.terms().map(|(c, _, _)| c.len()).max().unwrap_or(0);
    b + c
}

fn identity(x: &Element) -> Result<Element> {
    Ok(x.clone())
}

/// `(a⊗b)(c⊗d) = Σ a·a' ⊗ b'·d` with `Ψ(b⊗c) = Σ a'⊗b'`.
pub fn wick_mul(x: &WickElement, y: &WickElement, psi: &CrossSymmetry) -> Result<WickElement> {
    wick_mul_regular(x, y, psi, &identity, &identity)
}

/// [`wick_mul`] with `e_A` applied to the outer left leg and `e_{A^†}` to
/// the outer right leg before multiplying.
pub fn wick_mul_regular(
    x: &WickElement,
    y: &WickElement,
    psi: &CrossSymmetry,
    e_a: &dyn Fn(&Element) -> Result<Element>,
    e_ad: &dyn Fn(&Element) -> Result<Element>,
) -> Result<WickElement> {
    psi.require_coherent(middle_degree(x, y))?;
    let n = x.n();
    let mut out = WickElement::zero(n);
    for (a, b, s) in x.terms() {
        let ea = e_a(&Element::word(n, Alphabet::Theta, a)?)?;
        for (c, d, t) in y.terms() {
            let ed = e_ad(&Element::word(n, Alphabet::Xi, d)?)?;
            let mid = psi.psi(b, c)?;
            let prod = mid.map_legs(|u| ea.checked_mul(u), |v| v.checked_mul(&ed))?;
            out = out.checked_add(&prod.scale(&(s * t)))?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossSymmetryVerdict {
    pub holds: bool,
    /// `(ξ, a)` word pairs where the intertwining fails.
    pub witnesses: Vec<(Word, Word)>,
}

/// `(e_A ⊗ e_{A^†}) Ψ(ξ⊗a) = Ψ(e_{A^†}(ξ) ⊗ e_A(a))` on normal word pairs up to `max_deg`.
pub fn check_regular_cross_symmetry(
    psi: &CrossSymmetry,
    e_a: &dyn Fn(&Element) -> Result<Element>,
    e_ad: &dyn Fn(&Element) -> Result<Element>,
    max_deg: usize,
) -> Result<CrossSymmetryVerdict> {
    let words = RewriteSystem::new(2).enumerate_normal_forms(max_deg);
    let mut witnesses = Vec::new();
    for xi in &words {
        for theta in &words {
            let lhs = psi.psi(xi, theta)?.map_legs(e_a, e_ad)?;
            let rhs = psi.psi_elements(
                &e_ad(&Element::word(2, Alphabet::Xi, xi)?)?,
                &e_a(&Element::word(2, Alphabet::Theta, theta)?)?,
            )?;
            if lhs != rhs {
                witnesses.push((xi.clone(), theta.clone()));
            }
        }
    }
    Ok(CrossSymmetryVerdict {
        holds: witnesses.is_empty(),
        witnesses,
    })
}
