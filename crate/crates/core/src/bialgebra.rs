//! Tensor squares of RGA(2), the Θ/Ξ reversal pairing, the dual
//! comultiplication and the coalgebra, almost-bialgebra and module checks.

use std::collections::BTreeMap;
use std::fmt;

use crate::element::{basis2, write_sum_with, Alphabet, Element};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rewrite::{parity, RewriteSystem, Word};
use crate::rga2::obstruction_e2;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum SignConvention {
    #[default]
    Plain,
    /// `(a⊗b)(c⊗d) = (−1)^{|b||c|} ac⊗bd`
    Koszul,
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignConvention::Plain => "plain",
            SignConvention::Koszul => "koszul",
        })
    }
}

/// Finite sums of `u ⊗ v` over normal words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    sys: RewriteSystem,
    alphabets: (Alphabet, Alphabet),
    signs: SignConvention,
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorElement {
    pub fn zero(n: usize, alphabets: (Alphabet, Alphabet), signs: SignConvention) -> Self {
        TensorElement {
            sys: RewriteSystem::new(n),
            alphabets,
            signs,
            terms: BTreeMap::new(),
        }
    }

    /// `a ⊗ b`, expanded bilinearly.
    pub fn pure(a: &Element, b: &Element, signs: SignConvention) -> Result<Self> {
        if a.n() != b.n() {
            return Err(Error::AlgebraMismatch(format!(
                "legs over RGA({}) and RGA({})",
                a.n(),
                b.n()
            )));
        }
        let mut t = TensorElement::zero(a.n(), (a.alphabet(), b.alphabet()), signs);
        for (u, c) in a.terms() {
            for (v, d) in b.terms() {
                t.push(u.clone(), v.clone(), c * d);
            }
        }
        Ok(t)
    }

    /// Sums `c · (u ⊗ v)`, reducing both words to normal form.
    pub fn from_terms<I>(
        n: usize,
        alphabets: (Alphabet, Alphabet),
        signs: SignConvention,
        terms: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Word, Scalar)>,
    {
        let mut t = TensorElement::zero(n, alphabets, signs);
        for (u, v, c) in terms {
            let (Some(u), Some(v)) = (
                alphabets.0.normal_form(&t.sys, &u)?,
                alphabets.1.normal_form(&t.sys, &v)?,
            ) else {
                continue;
            };
            t.push(u, v, c);
        }
        Ok(t)
    }

    fn push(&mut self, u: Word, v: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (u, v);
        let sum = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn n(&self) -> usize {
        self.sys.n()
    }

    pub fn alphabets(&self) -> (Alphabet, Alphabet) {
        self.alphabets
    }

    pub fn signs(&self) -> SignConvention {
        self.signs
    }

    pub fn with_signs(&self, signs: SignConvention) -> Self {
        TensorElement {
            signs,
            ..self.clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &Scalar)> {
        self.terms.iter().map(|((u, v), c)| (u, v, c))
    }

    pub fn coefficient(&self, u: &Word, v: &Word) -> Scalar {
        self.terms
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn compatible(&self, other: &TensorElement) -> Result<()> {
        if self.signs != other.signs {
            return Err(Error::ConventionMismatch);
        }
        if self.alphabets != other.alphabets || self.n() != other.n() {
            return Err(Error::AlgebraMismatch("tensor legs differ".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.compatible(other)?;
        let mut out = self.clone();
        for ((u, v), c) in &other.terms {
            out.push(u.clone(), v.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.checked_add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> TensorElement {
        let mut out = TensorElement {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for ((u, v), c) in &self.terms {
            out.push(u.clone(), v.clone(), s * c);
        }
        out
    }

    /// Applies `f ⊗ g` term by term: `Σ c · f(u) ⊗ g(v)`.
    pub fn map_legs(
        &self,
        f: impl Fn(&Element) -> Result<Element>,
        g: impl Fn(&Element) -> Result<Element>,
    ) -> Result<TensorElement> {
        let n = self.n();
        let mut out = TensorElement {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for ((u, v), c) in &self.terms {
            let fu = f(&Element::word(n, self.alphabets.0, u)?)?;
            let gv = g(&Element::word(n, self.alphabets.1, v)?)?;
            out = out.checked_add(&TensorElement::pure(&fu, &gv, self.signs)?.scale(c))?;
        }
        Ok(out)
    }
}

/// `(a⊗b)(c⊗d) = σ · ac ⊗ bd`, with σ fixed by the shared sign convention.
pub fn tensor_mul(s: &TensorElement, t: &TensorElement) -> Result<TensorElement> {
    s.compatible(t)?;
    let sys = s.sys;
    let mut out = TensorElement {
        terms: BTreeMap::new(),
        ..s.clone()
    };
    for ((a, b), x) in &s.terms {
        for ((c, d), y) in &t.terms {
            let Some(ac) = s.alphabets.0.normal_form(&sys, &a.concat(c))? else {
                continue;
            };
            let Some(bd) = s.alphabets.1.normal_form(&sys, &b.concat(d))? else {
                continue;
            };
            let mut coef = x * y;
            if s.signs == SignConvention::Koszul && parity(b) * parity(c) == 1 {
                coef = -&coef;
            }
            out.push(ac, bd, coef);
        }
    }
    Ok(out)
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = (self.alphabets.0.symbol(), self.alphabets.1.symbol());
        write_sum_with(
            f,
            self.terms.iter().map(|((u, v), c)| {
                (
                    c,
                    (!u.is_unit()).then(|| u.render(l)),
                    format!(" (x) {}", v.render(r)),
                )
            }),
        )
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement[{}]({self})", self.signs)
    }
}

/// `⟨Ξ_w | Θ_v⟩ = 1` exactly when `v` is the reversal of `w`.
pub fn pair_words(xi: &Word, theta: &Word) -> Scalar {
    if &xi.reversed() == theta {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// Bilinear extension of [`pair_words`].
pub fn pair(xi: &Element, a: &Element) -> Result<Scalar> {
    if xi.alphabet() != Alphabet::Xi || a.alphabet() != Alphabet::Theta {
        return Err(Error::AlgebraMismatch(
            "pairing takes a Ξ element and a Θ element".into(),
        ));
    }
    let mut acc = Scalar::zero();
    for (w, c) in xi.terms() {
        let v = w.reversed();
        let d = a.coefficient(&v);
        if !d.is_zero() {
            acc += &(c * &d);
        }
    }
    Ok(acc)
}

/// `⟨ξ₁⊗ξ₂, a₁⊗a₂⟩ = ⟨ξ₁,a₁⟩⟨ξ₂,a₂⟩`, or `⟨ξ₁,a₂⟩⟨ξ₂,a₁⟩` when `flip` is set.
pub fn pair_tensor(xi: &TensorElement, a: &TensorElement, flip: bool) -> Result<Scalar> {
    if xi.alphabets != (Alphabet::Xi, Alphabet::Xi)
        || a.alphabets != (Alphabet::Theta, Alphabet::Theta)
    {
        return Err(Error::AlgebraMismatch(
            "tensor pairing takes Ξ⊗Ξ against Θ⊗Θ".into(),
        ));
    }
    let mut acc = Scalar::zero();
    for ((x1, x2), c) in &xi.terms {
        for ((a1, a2), d) in &a.terms {
            let p = if flip {
                &pair_words(x1, a2) * &pair_words(x2, a1)
            } else {
                &pair_words(x1, a1) * &pair_words(x2, a2)
            };
            if !p.is_zero() {
                acc += &(&(c * d) * &p);
            }
        }
    }
    Ok(acc)
}

/// The 5×5 matrix `⟨Ξ_{b_r} | Θ_{b_s}⟩` on the standard basis words.
pub fn pairing_matrix2() -> Matrix {
    let b = basis2();
    let mut m = Matrix::zeros(5, 5);
    for (r, u) in b.iter().enumerate() {
        for (s, v) in b.iter().enumerate() {
            m.set(r, s, pair_words(u, v));
        }
    }
    m
}

/// The algebra `A^∨(Ξ₁, Ξ₂)`: Ξᵢ² = 0, Ξ₁Ξ₂Ξ₁ = Ξ₁, Ξ₂Ξ₁Ξ₂ = Ξ₂.
#[derive(Clone, Copy, Debug, Default)]
pub struct DualAlgebra;

impl DualAlgebra {
    pub fn one(&self) -> Element {
        Element::one(2, Alphabet::Xi)
    }

    pub fn generator(&self, i: usize) -> Result<Element> {
        Element::generator(2, Alphabet::Xi, i)
    }

    pub fn word(&self, w: &Word) -> Result<Element> {
        Element::word(2, Alphabet::Xi, w)
    }

    pub fn basis(&self) -> Vec<Element> {
        basis2()
            .iter()
            .map(|w| self.word(w).expect("basis word"))
            .collect()
    }

    /// Each defining relation with whether it holds.
    pub fn relations(&self) -> Vec<(&'static str, bool)> {
        let x1 = self.generator(1).expect("Ξ1");
        let x2 = self.generator(2).expect("Ξ2");
        vec![
            ("X1 X1 = 0", (&x1 * &x1).is_zero()),
            ("X2 X2 = 0", (&x2 * &x2).is_zero()),
            ("X1 X2 X1 = X1", &(&x1 * &x2) * &x1 == x1),
            ("X2 X1 X2 = X2", &(&x2 * &x1) * &x2 == x2),
        ]
    }
}

/// `Δ(w) = Σ_{u,v} ⟨w, u·v⟩ u^∨ ⊗ v^∨` for every Ξ basis word of length up
/// to `basis_deg`, with `u^∨` the reversed word. `flip` swaps the legs.
pub fn dual_comultiplication(basis_deg: usize, flip: bool) -> Vec<(Word, TensorElement)> {
    let sys = RewriteSystem::new(2);
    let words = sys.enumerate_normal_forms(basis_deg);
    words
        .iter()
        .map(|w| {
            let mut delta =
                TensorElement::zero(2, (Alphabet::Xi, Alphabet::Xi), SignConvention::Plain);
            for u in &words {
                for v in &words {
                    let Some(uv) = sys.normal_form(&u.concat(v)).expect("valid letters") else {
                        continue;
                    };
                    let c = pair_words(w, &uv);
                    if c.is_zero() {
                        continue;
                    }
                    let (l, r) = if flip { (v, u) } else { (u, v) };
                    delta.push(l.reversed(), r.reversed(), c);
                }
            }
            (w.clone(), delta)
        })
        .collect()
}

fn delta_of<'a>(table: &'a [(Word, TensorElement)], w: &Word) -> Option<&'a TensorElement> {
    table.iter().find(|(k, _)| k == w).map(|(_, d)| d)
}

/// Recomputes `⟨Δ(w), u⊗v⟩ = ⟨w, uv⟩` on all basis triples.
pub fn check_dual3(table: &[(Word, TensorElement)], flip: bool) -> Result<bool> {
    let words: Vec<Word> = table.iter().map(|(w, _)| w.clone()).collect();
    for (w, delta) in table {
        let xi = Element::word(2, Alphabet::Xi, w)?;
        for u in &words {
            for v in &words {
                let uv = Element::word(2, Alphabet::Theta, &u.concat(v))?;
                let probe = TensorElement::from_terms(
                    2,
                    (Alphabet::Theta, Alphabet::Theta),
                    delta.signs,
                    [(u.clone(), v.clone(), Scalar::one())],
                )?;
                if pair_tensor(delta, &probe, flip)? != pair(&xi, &uv)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

type Triple = BTreeMap<(Word, Word, Word), Scalar>;

fn add_triple(acc: &mut Triple, key: (Word, Word, Word), c: Scalar) {
    let sum = match acc.get(&key) {
        Some(old) => old + &c,
        None => c,
    };
    if sum.is_zero() {
        acc.remove(&key);
    } else {
        acc.insert(key, sum);
    }
}

/// Basis words where `(Δ⊗id)Δ ≠ (id⊗Δ)Δ`.
pub fn coassociativity_failures(table: &[(Word, TensorElement)]) -> Vec<Word> {
    let mut failures = Vec::new();
    for (w, delta) in table {
        let mut left = Triple::new();
        let mut right = Triple::new();
        for ((u, v), c) in &delta.terms {
            if let Some(du) = delta_of(table, u) {
                for ((p, q), d) in &du.terms {
                    add_triple(&mut left, (p.clone(), q.clone(), v.clone()), c * d);
                }
            }
            if let Some(dv) = delta_of(table, v) {
                for ((p, q), d) in &dv.terms {
                    add_triple(&mut right, (u.clone(), p.clone(), q.clone()), c * d);
                }
            }
        }
        if left != right {
            failures.push(w.clone());
        }
    }
    failures
}

/// Basis words where `Δ(e(w)) ≠ (e⊗e)(Δ(w))`, with the affine obstruction
/// `e` applied to each basis tensor leg.
pub fn regular_coalgebra_failures(table: &[(Word, TensorElement)]) -> Result<Vec<Word>> {
    let mut failures = Vec::new();
    for (w, delta) in table {
        let ew = obstruction_e2(&Element::word(2, Alphabet::Xi, w)?)?;
        let mut lhs = TensorElement::zero(2, (Alphabet::Xi, Alphabet::Xi), delta.signs);
        for (u, c) in ew.terms() {
            let du = delta_of(table, u).ok_or_else(|| {
                Error::Dimension(format!("Δ is not tabulated on {}", u.render('X')))
            })?;
            lhs = lhs.checked_add(&du.scale(c))?;
        }
        let rhs = delta.map_legs(obstruction_e2, obstruction_e2)?;
        if lhs != rhs {
            failures.push(w.clone());
        }
    }
    Ok(failures)
}

/// Interpretation of the symbol `e_{Xᵢ}` inside `Δ(Θᵢ) = Θᵢ⊗e + e⊗Θᵢ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EVacuum {
    /// `e = 1`, making `Δ` primitive.
    Unit,
    /// `e_{X₁} = E₁₂ = Θ₁Θ₂`, `e_{X₂} = E₂₁ = Θ₂Θ₁`.
    Idempotent,
}

impl EVacuum {
    pub fn element(self, i: usize) -> Element {
        match self {
            EVacuum::Unit => Element::one(2, Alphabet::Theta),
            EVacuum::Idempotent => {
                let w = if i == 1 {
                    Word::new(vec![1, 2])
                } else {
                    Word::new(vec![2, 1])
                };
                Element::word(2, Alphabet::Theta, &w).expect("E word")
            }
        }
    }

    pub fn label(self, i: usize) -> &'static str {
        match (self, i) {
            (EVacuum::Unit, _) => "1",
            (EVacuum::Idempotent, 1) => "E12",
            (EVacuum::Idempotent, _) => "E21",
        }
    }
}

/// `Θᵢ ⊗ e + e ⊗ Θᵢ`.
pub fn candidate_delta(i: usize, e: &Element, signs: SignConvention) -> Result<TensorElement> {
    let t = Element::generator(2, Alphabet::Theta, i)?;
    TensorElement::pure(&t, e, signs)?.checked_add(&TensorElement::pure(e, &t, signs)?)
}

/// Verdicts for `Δ(Θ₁)² = 0`, `Δ(Θ₂)² = 0`, `Δ(Θ₁)Δ(Θ₂)Δ(Θ₁) = Δ(Θ₁)` and
/// `Δ(Θ₂)Δ(Θ₁)Δ(Θ₂) = Δ(Θ₂)`.
pub fn check_almost_bialgebra(
    d1: &TensorElement,
    d2: &TensorElement,
) -> Result<Vec<(&'static str, bool)>> {
    let sq1 = tensor_mul(d1, d1)?;
    let sq2 = tensor_mul(d2, d2)?;
    let c1 = tensor_mul(&tensor_mul(d1, d2)?, d1)?;
    let c2 = tensor_mul(&tensor_mul(d2, d1)?, d2)?;
    Ok(vec![
        ("D(T1)^2 = 0", sq1.is_zero()),
        ("D(T2)^2 = 0", sq2.is_zero()),
        ("D(T1) D(T2) D(T1) = D(T1)", &c1 == d1),
        ("D(T2) D(T1) D(T2) = D(T2)", &c2 == d2),
    ])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostBialgebraRow {
    pub e1: EVacuum,
    pub e2: EVacuum,
    pub signs: SignConvention,
    pub relation: &'static str,
    pub holds: bool,
}

/// Every relation under all four `(e_{X₁}, e_{X₂})` interpretations and both
/// sign conventions.
pub fn almost_bialgebra_table() -> Result<Vec<AlmostBialgebraRow>> {
    let mut rows = Vec::new();
    for e1 in [EVacuum::Unit, EVacuum::Idempotent] {
        for e2 in [EVacuum::Unit, EVacuum::Idempotent] {
            for signs in [SignConvention::Plain, SignConvention::Koszul] {
                let d1 = candidate_delta(1, &e1.element(1), signs)?;
                let d2 = candidate_delta(2, &e2.element(2), signs)?;
                for (relation, holds) in check_almost_bialgebra(&d1, &d2)? {
                    rows.push(AlmostBialgebraRow {
                        e1,
                        e2,
                        signs,
                        relation,
                        holds,
                    });
                }
            }
        }
    }
    Ok(rows)
}

/// `x ↦ Mx + b` on coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: Matrix,
    pub offset: Vec<Scalar>,
}

impl AffineMap {
    pub fn new(matrix: Matrix, offset: Vec<Scalar>) -> Result<Self> {
        if !matrix.is_square() || offset.len() != matrix.rows() {
            return Err(Error::Dimension(format!(
                "affine map with {}x{} matrix and offset of length {}",
                matrix.rows(),
                matrix.cols(),
                offset.len()
            )));
        }
        Ok(AffineMap { matrix, offset })
    }

    pub fn linear(matrix: Matrix) -> Result<Self> {
        let n = matrix.rows();
        AffineMap::new(matrix, vec![Scalar::zero(); n])
    }

    pub fn identity(dim: usize) -> Self {
        AffineMap {
            matrix: Matrix::identity(dim),
            offset: vec![Scalar::zero(); dim],
        }
    }

    /// The obstruction `a ↦ e(a)` in RGA(2) coordinates.
    pub fn obstruction_e2() -> Self {
        let swap = Matrix::from_ints(&[
            &[0, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0],
            &[0, 1, 0, 0, 0],
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 1, 0],
        ]);
        let mut offset = vec![Scalar::zero(); 5];
        offset[0] = Scalar::one();
        AffineMap {
            matrix: swap,
            offset,
        }
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix
            .apply(x)
            .iter()
            .zip(&self.offset)
            .map(|(a, b)| a + b)
            .collect()
    }
}

/// One `dim M × dim M` matrix per algebra basis vector: `ρ(aᵢ, ·)`.
pub fn multiplication_action2() -> Vec<Matrix> {
    let space = crate::repr::full_space2(Alphabet::Theta);
    crate::rga2::basis_elements(Alphabet::Theta)
        .iter()
        .map(|a| {
            crate::repr::left_mul_map(a, &space, &space)
                .expect("RGA(2) is closed")
                .matrix()
                .clone()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVerdict {
    pub holds: bool,
    /// `(i, j)` pairs of algebra and module basis indices that fail.
    pub failures: Vec<(usize, usize)>,
}

fn act(action: &[Matrix], a: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); m.len()];
    for (ai, rho) in a.iter().zip(action) {
        if ai.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(rho.apply(m)) {
            *o += &(ai * &y);
        }
    }
    out
}

fn unit_vector(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

/// `ρ(e_A(aᵢ), e_M(mⱼ)) = e_M(ρ(aᵢ, mⱼ))` on all basis pairs.
pub fn check_regular_module(
    action: &[Matrix],
    e_a: &AffineMap,
    e_m: &AffineMap,
) -> Result<ModuleVerdict> {
    let dim_m = e_m.dim();
    if action.len() != e_a.dim() {
        return Err(Error::Dimension(format!(
            "{} action matrices for an algebra of dimension {}",
            action.len(),
            e_a.dim()
        )));
    }
    if let Some(bad) = action
        .iter()
        .find(|m| m.rows() != dim_m || m.cols() != dim_m)
    {
        return Err(Error::Dimension(format!(
            "{}x{} action matrix on a module of dimension {dim_m}",
            bad.rows(),
            bad.cols()
        )));
    }
    let mut failures = Vec::new();
    for i in 0..e_a.dim() {
        let a = unit_vector(e_a.dim(), i);
        for j in 0..dim_m {
            let m = unit_vector(dim_m, j);
            let lhs = act(action, &e_a.apply(&a), &e_m.apply(&m));
            let rhs = e_m.apply(&act(action, &a, &m));
            if lhs != rhs {
                failures.push((i, j));
            }
        }
    }
    Ok(ModuleVerdict {
        holds: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(n: usize, w: &[usize]) -> Element {
        Element::word(n, Alphabet::Theta, &Word::from(w)).unwrap()
    }

    fn one() -> Element {
        Element::one(2, Alphabet::Theta)
    }

    #[test]
    fn sign_conventions() {
        let t1 = theta(2, &[1]);
        let t2 = theta(2, &[2]);
        for s in [SignConvention::Plain, SignConvention::Koszul] {
            let x = TensorElement::pure(&t1, &one(), s).unwrap();
            let y = TensorElement::pure(&one(), &t1, s).unwrap();
            assert_eq!(
                tensor_mul(&x, &y).unwrap(),
                TensorElement::pure(&t1, &t1, s).unwrap()
            );
        }
        let a = TensorElement::pure(&one(), &t1, SignConvention::Koszul).unwrap();
        let b = TensorElement::pure(&t2, &one(), SignConvention::Koszul).unwrap();
        assert_eq!(tensor_mul(&a, &b).unwrap().to_string(), "-T2 (x) T1");
        let a = a.with_signs(SignConvention::Plain);
        let b = b.with_signs(SignConvention::Plain);
        assert_eq!(tensor_mul(&a, &b).unwrap().to_string(), "T2 (x) T1");
        assert_eq!(
            tensor_mul(&a, &b.with_signs(SignConvention::Koszul)),
            Err(Error::ConventionMismatch)
        );
    }

    #[test]
    fn idempotent_delta_squares_to_zero() {
        let e12 = theta(2, &[1, 2]);
        for s in [SignConvention::Plain, SignConvention::Koszul] {
            let d = candidate_delta(1, &e12, s).unwrap();
            assert!(tensor_mul(&d, &d).unwrap().is_zero());
        }
    }

    #[test]
    fn printing() {
        let x = TensorElement::from_terms(
            2,
            (Alphabet::Theta, Alphabet::Xi),
            SignConvention::Plain,
            [
                (Word::unit(), Word::unit(), Scalar::int(2)),
                (Word::from([1, 2]), Word::from([1]), Scalar::int(-1)),
                (Word::from([2]), Word::unit(), Scalar::omega()),
            ],
        )
        .unwrap();
        assert_eq!(x.to_string(), "2 (x) 1 + 1*w T2 (x) 1 - T1 T2 (x) X1");
    }

    #[test]
    fn pairing_values() {
        let xi = |w: &[usize]| Element::word(2, Alphabet::Xi, &Word::from(w)).unwrap();
        assert_eq!(pair(&xi(&[1]), &theta(2, &[1])).unwrap(), Scalar::one());
        assert_eq!(
            pair(&xi(&[1, 2]), &theta(2, &[2, 1])).unwrap(),
            Scalar::one()
        );
        assert_eq!(pair(&xi(&[1]), &theta(2, &[2])).unwrap(), Scalar::zero());
        assert!(pair(&theta(2, &[1]), &theta(2, &[1])).is_err());
        let p = pairing_matrix2();
        assert!((&p * &p.transpose()).is_identity());
    }

    #[test]
    fn dual_relations() {
        for (name, ok) in DualAlgebra.relations() {
            assert!(ok, "{name}");
        }
        // the relation Ξ₁Ξ₂Ξ₂ = Ξ₁ cannot hold alongside Ξ₂² = 0
        let x1 = DualAlgebra.generator(1).unwrap();
        let x2 = DualAlgebra.generator(2).unwrap();
        assert!((&(&x1 * &x2) * &x2).is_zero());
    }

    #[test]
    fn comultiplication_table() {
        let table = dual_comultiplication(2, false);
        assert_eq!(table.len(), 5);
        let d1 = delta_of(&table, &Word::unit()).unwrap();
        assert_eq!(d1.coefficient(&Word::unit(), &Word::unit()), Scalar::one());
        let dx1 = delta_of(&table, &Word::from([1])).unwrap();
        assert_eq!(
            dx1.coefficient(&Word::from([1]), &Word::from([1, 2])),
            Scalar::one()
        );
        assert!(check_dual3(&table, false).unwrap());
        assert!(check_dual3(&dual_comultiplication(2, true), true).unwrap());
    }

    #[test]
    fn module_checks() {
        let action = multiplication_action2();
        let id = AffineMap::identity(5);
        assert!(check_regular_module(&action, &id, &id).unwrap().holds);
        let mut scaled = Matrix::identity(5);
        scaled.set(1, 1, Scalar::int(2));
        let perturbed = AffineMap::linear(scaled).unwrap();
        assert!(
            !check_regular_module(&action, &id, &perturbed)
                .unwrap()
                .holds
        );
        assert!(check_regular_module(&action[..4], &id, &id).is_err());
    }

    #[test]
    fn affine_obstruction_matches_element_map() {
        let e = AffineMap::obstruction_e2();
        let a = Element::from_components2(Alphabet::Theta, [3, 1, 2, 4, 5].map(Scalar::int));
        let coords = a.components2().unwrap();
        let image = e.apply(&coords);
        assert_eq!(
            Element::from_components2(Alphabet::Theta, image.try_into().unwrap()),
            obstruction_e2(&a).unwrap()
        );
    }
}
