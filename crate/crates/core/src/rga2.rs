//! Closed-form operations on the two-generator algebra RGA(2).
//!
//! Elements are handled through their five coordinates
//! `(a₀, a₁, a₂, a₁₂, a₂₁)` on the basis `(1, Θ₁, Θ₂, Θ₁Θ₂, Θ₂Θ₁)`.

use crate::element::{basis2, Alphabet, Element};
use crate::error::{Error, NonInvertibleReason, Result};
use crate::linalg::Matrix;
use crate::repr::{full_space2, left_mul_map, right_mul_map};
use crate::rewrite::Word;
use crate::scalar::Scalar;
use crate::space::Subspace;

fn comps(a: &Element) -> Result<[Scalar; 5]> {
    a.components2()
}

fn same_alphabet(a: &Element, b: &Element) -> Result<()> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlgebraMismatch("Θ and Ξ elements mixed".into()));
    }
    Ok(())
}

/// The multiplication table of RGA(2) written out component by component,
/// including the four terms that only exist because of regularity.
pub fn mul_closed_form_2(a: &Element, b: &Element) -> Result<Element> {
    same_alphabet(a, b)?;
    let [a0, a1, a2, a12, a21] = comps(a)?;
    let [b0, b1, b2, b12, b21] = comps(b)?;
    let c0 = &a0 * &b0;
    let c1 = &(&(&a0 * &b1) + &(&a1 * &b0)) + &(&(&a1 * &b21) + &(&a12 * &b1));
    let c2 = &(&(&a0 * &b2) + &(&a2 * &b0)) + &(&(&a2 * &b12) + &(&a21 * &b2));
    let c12 = &(&(&a0 * &b12) + &(&a1 * &b2)) + &(&(&a12 * &b0) + &(&a12 * &b12));
    let c21 = &(&(&a0 * &b21) + &(&a2 * &b1)) + &(&(&a21 * &b0) + &(&a21 * &b21));
    Ok(Element::from_components2(
        a.alphabet(),
        [c0, c1, c2, c12, c21],
    ))
}

/// `D = (a₀ + a₁₂)(a₀ + a₂₁) − a₁a₂`.
pub fn determinant_d(a: &Element) -> Result<Scalar> {
    let [a0, a1, a2, a12, a21] = comps(a)?;
    Ok(&(&(&a0 + &a12) * &(&a0 + &a21)) - &(&a1 * &a2))
}

/// Closed-form inverse
///
/// ```text
/// a⁻¹ = 1/a₀ − D⁻¹ [ a₁Θ₁ + a₂Θ₂ + (a₁₂(1 + a₂₁/a₀) − a₁a₂/a₀) Θ₁Θ₂
///                                + (a₂₁(1 + a₁₂/a₀) − a₁a₂/a₀) Θ₂Θ₁ ]
/// ```
///
/// The result is checked against both one-sided products before returning.
pub fn invert(a: &Element) -> Result<Element> {
    let [a0, a1, a2, a12, a21] = comps(a)?;
    let inv_a0 = a0
        .inv()
        .ok_or(Error::NotInvertible(NonInvertibleReason::ZeroConstant))?;
    let d = determinant_d(a)?;
    let inv_d = d
        .inv()
        .ok_or(Error::NotInvertible(NonInvertibleReason::ZeroDeterminant))?;
    let one = Scalar::one();
    let a1a2_over_a0 = &(&a1 * &a2) * &inv_a0;
    let c12 = &(&a12 * &(&one + &(&a21 * &inv_a0))) - &a1a2_over_a0;
    let c21 = &(&a21 * &(&one + &(&a12 * &inv_a0))) - &a1a2_over_a0;
    let minus_inv_d = -&inv_d;
    let inv = Element::from_components2(
        a.alphabet(),
        [
            inv_a0,
            &minus_inv_d * &a1,
            &minus_inv_d * &a2,
            &minus_inv_d * &c12,
            &minus_inv_d * &c21,
        ],
    );
    let unit = Element::one(2, a.alphabet());
    assert!(
        a * &inv == unit && &inv * a == unit,
        "closed-form inverse of {a} failed verification"
    );
    Ok(inv)
}

fn singular_reason(a: &Element) -> Result<NonInvertibleReason> {
    let [a0, ..] = comps(a)?;
    Ok(if a0.is_zero() {
        NonInvertibleReason::ZeroConstant
    } else {
        NonInvertibleReason::ZeroDeterminant
    })
}

/// Inverse through an exact 5×5 solve of `a·b = 1` with the left
/// multiplication matrix of `a`.
pub fn invert_by_solve(a: &Element) -> Result<Element> {
    let space = full_space2(a.alphabet());
    let la = left_mul_map(a, &space, &space)?;
    let mut rhs = vec![Scalar::zero(); 5];
    rhs[0] = Scalar::one();
    if la.matrix().rank() < 5 {
        return Err(Error::NotInvertible(singular_reason(a)?));
    }
    let b = la
        .matrix()
        .solve(&rhs)
        .expect("full rank system is consistent");
    space.element(2, &b)
}

/// Inverse computed inside a finite truncation of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedInverse {
    pub element: Element,
    /// Products dropped because they left the truncation.
    pub dropped_terms: usize,
}

impl TruncatedInverse {
    pub fn is_truncated(&self) -> bool {
        self.dropped_terms > 0
    }
}

/// Solves `a·b = 1` for `b` in `span(space)`, projecting products that leave
/// the span to zero. Works for any number of generators.
pub fn invert_on_truncation(a: &Element, space: &Subspace) -> Result<TruncatedInverse> {
    let pos_unit = space
        .position(&Word::unit())
        .ok_or_else(|| Error::Dimension(format!("{} does not contain the unit", space.label())))?;
    let mut m = Matrix::zeros(space.dim(), space.dim());
    let mut dropped = 0;
    for (j, w) in space.basis().iter().enumerate() {
        let y = a.checked_mul(&Element::word(a.n(), a.alphabet(), w)?)?;
        for (u, c) in y.terms() {
            match space.position(u) {
                Some(i) => m.set(i, j, c.clone()),
                None => dropped += 1,
            }
        }
    }
    let mut rhs = vec![Scalar::zero(); space.dim()];
    rhs[pos_unit] = Scalar::one();
    if m.rank() < space.dim() {
        return Err(Error::NotInvertible(
            if a.coefficient(&Word::unit()).is_zero() {
                NonInvertibleReason::ZeroConstant
            } else {
                NonInvertibleReason::ZeroDeterminant
            },
        ));
    }
    let b = m.solve(&rhs).expect("full rank");
    Ok(TruncatedInverse {
        element: space.element(a.n(), &b)?,
        dropped_terms: dropped,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `{b : b·a = 0}`
    Left,
    /// `{b : a·b = 0}`
    Right,
}

/// Basis of the one-sided annihilator of `a` inside `span(domain)`.
pub fn annihilator_in(a: &Element, side: Side, domain: &Subspace) -> Result<Vec<Element>> {
    // codomain: every word any product can reach
    let mut words: Vec<Word> = Vec::new();
    for w in domain.basis() {
        let x = Element::word(a.n(), a.alphabet(), w)?;
        let y = match side {
            Side::Right => a.checked_mul(&x)?,
            Side::Left => x.checked_mul(a)?,
        };
        words.extend(y.terms().map(|(u, _)| u.clone()));
    }
    words.sort();
    words.dedup();
    let codomain = Subspace::new("image", a.alphabet(), words)?;
    let map = match side {
        Side::Right => left_mul_map(a, domain, &codomain)?,
        Side::Left => right_mul_map(a, domain, &codomain)?,
    };
    map.matrix()
        .nullspace()
        .iter()
        .map(|v| domain.element(a.n(), v))
        .collect()
}

/// Annihilator of an RGA(2) element over the full five-word basis.
pub fn annihilator(a: &Element, side: Side) -> Result<Vec<Element>> {
    if a.n() != 2 {
        return Err(Error::NeedsTwoGenerators(a.n()));
    }
    annihilator_in(a, side, &full_space2(a.alphabet()))
}

/// `e(a) = 1 + a₂Θ₁ + a₁Θ₂ + a₂₁Θ₁Θ₂ + a₁₂Θ₂Θ₁`; the constant is 1 whatever `a₀` is.
pub fn obstruction_e2(a: &Element) -> Result<Element> {
    let [_, a1, a2, a12, a21] = comps(a)?;
    Ok(Element::from_components2(
        a.alphabet(),
        [Scalar::one(), a2, a1, a21, a12],
    ))
}

/// The product `a ⋆ b` transported through the obstruction, so that
/// `e(a)·e(b) = e(a ⋆ b)`:
///
/// ```text
/// c₁  = a₁ + b₁ + a₁b₂₁ + a₁₂b₁      c₁₂ = a₁₂ + b₁₂ + a₁b₂ + a₁₂b₁₂
/// c₂  = a₂ + b₂ + a₂b₁₂ + a₂₁b₂      c₂₁ = a₂₁ + b₂₁ + a₂b₁ + a₂₁b₂₁
/// ```
///
/// The constant coordinate is fixed to 1.
pub fn obstructed_product(a: &Element, b: &Element) -> Result<Element> {
    same_alphabet(a, b)?;
    let [_, a1, a2, a12, a21] = comps(a)?;
    let [_, b1, b2, b12, b21] = comps(b)?;
    let c1 = &(&a1 + &b1) + &(&(&a1 * &b21) + &(&a12 * &b1));
    let c2 = &(&a2 + &b2) + &(&(&a2 * &b12) + &(&a21 * &b2));
    let c12 = &(&a12 + &b12) + &(&(&a1 * &b2) + &(&a12 * &b12));
    let c21 = &(&a21 + &b21) + &(&(&a2 * &b1) + &(&a21 * &b21));
    Ok(Element::from_components2(
        a.alphabet(),
        [Scalar::one(), c1, c2, c12, c21],
    ))
}

/// The component equations with the cross terms of `c₁` and `c₂` in the
/// other assignment (`c₁ ∋ a₂b₁₂ + a₂₁b₂`, `c₂ ∋ a₁b₂₁ + a₁₂b₁`). Kept to
/// document that this assignment does not intertwine the obstruction.
pub fn obstructed_product_swapped(a: &Element, b: &Element) -> Result<Element> {
    same_alphabet(a, b)?;
    let [_, a1, a2, a12, a21] = comps(a)?;
    let [_, b1, b2, b12, b21] = comps(b)?;
    let c1 = &(&a1 + &b1) + &(&(&a2 * &b12) + &(&a21 * &b2));
    let c2 = &(&a2 + &b2) + &(&(&a1 * &b21) + &(&a12 * &b1));
    let c12 = &(&a12 + &b12) + &(&(&a1 * &b2) + &(&a12 * &b12));
    let c21 = &(&a21 + &b21) + &(&(&a2 * &b1) + &(&a21 * &b21));
    Ok(Element::from_components2(
        a.alphabet(),
        [Scalar::one(), c1, c2, c12, c21],
    ))
}

/// Idempotents `e·e = e` of the form `1 + Θ₁ + Θ₂ + γΘ₁Θ₂ + δΘ₂Θ₁`.
///
/// With α = β = 1 the Θ₁ and Θ₂ equations give `γ + δ = −1`, and the Θ₁Θ₂
/// equation becomes `γ² + γ + 1 = 0`, solved exactly in ℚ(ω).
pub fn find_idempotent_obstructions() -> Vec<Element> {
    let one = Scalar::one();
    let roots = Scalar::monic_quadratic_roots(&one, &one);
    let mut out: Vec<Element> = roots
        .into_iter()
        .map(|gamma| {
            let delta = &Scalar::int(-1) - &gamma;
            Element::from_components2(
                Alphabet::Theta,
                [one.clone(), one.clone(), one.clone(), gamma, delta],
            )
        })
        .filter(|e| &(e * e) == e)
        .collect();
    out.sort_by_key(|e| e.to_string());
    out
}

/// The five basis elements of RGA(2) in the given alphabet.
pub fn basis_elements(alphabet: Alphabet) -> Vec<Element> {
    basis2()
        .iter()
        .map(|w| Element::word(2, alphabet, w).expect("basis word"))
        .collect()
}
