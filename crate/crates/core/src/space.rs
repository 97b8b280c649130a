//! Based spaces spanned by words, and exact linear maps between them.

use std::fmt;

use crate::element::{Alphabet, Element};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rewrite::Word;
use crate::scalar::Scalar;

/// A labelled space with an ordered basis of distinct words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    label: String,
    alphabet: Alphabet,
    basis: Vec<Word>,
}

impl Subspace {
    pub fn new(label: impl Into<String>, alphabet: Alphabet, basis: Vec<Word>) -> Result<Self> {
        let label = label.into();
        for (i, w) in basis.iter().enumerate() {
            if basis[..i].contains(w) {
                return Err(Error::Dimension(format!(
                    "basis of {label} repeats {}",
                    w.render(alphabet.symbol())
                )));
            }
        }
        Ok(Subspace {
            label,
            alphabet,
            basis,
        })
    }

    /// An abstract `dim`-dimensional space; basis words are the single letters 1..=dim.
    pub fn coordinate(label: impl Into<String>, dim: usize) -> Self {
        Subspace {
            label: label.into(),
            alphabet: Alphabet::Theta,
            basis: (1..=dim).map(Word::generator).collect(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn relabel(&self, label: impl Into<String>) -> Subspace {
        Subspace {
            label: label.into(),
            ..self.clone()
        }
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.basis.iter().position(|b| b == w)
    }

    /// Coordinates of `e`, or the first word of its support outside the span.
    pub fn coordinates(&self, e: &Element) -> std::result::Result<Vec<Scalar>, Word> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (w, c) in e.terms() {
            match self.position(w) {
                Some(i) => v[i] = c.clone(),
                None => return Err(w.clone()),
            }
        }
        Ok(v)
    }

    pub fn element(&self, n: usize, coords: &[Scalar]) -> Result<Element> {
        Element::from_terms(
            n,
            self.alphabet,
            self.basis.iter().cloned().zip(coords.iter().cloned()),
        )
    }

    /// `{T1, T1 T2}` style listing.
    pub fn render_basis(&self) -> String {
        let sym = self.alphabet.symbol();
        let items: Vec<String> = self.basis.iter().map(|w| w.render(sym)).collect();
        format!("{{{}}}", items.join(", "))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.label, self.render_basis())
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.label, self.render_basis())
    }
}

/// A linear map given by its matrix; rows index the codomain basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearMap {
    domain: Subspace,
    codomain: Subspace,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(domain: Subspace, codomain: Subspace, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for a map {} ({}) -> {} ({})",
                matrix.rows(),
                matrix.cols(),
                domain.label(),
                domain.dim(),
                codomain.label(),
                codomain.dim()
            )));
        }
        Ok(LinearMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(space: &Subspace) -> Self {
        LinearMap {
            domain: space.clone(),
            codomain: space.clone(),
            matrix: Matrix::identity(space.dim()),
        }
    }

    pub fn domain(&self) -> &Subspace {
        &self.domain
    }

    pub fn codomain(&self) -> &Subspace {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_endo(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn is_identity(&self) -> bool {
        self.is_endo() && self.matrix.is_identity()
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn after(&self, inner: &LinearMap) -> Result<LinearMap> {
        if inner.codomain != self.domain {
            return Err(Error::ChainMismatch {
                index: 0,
                detail: format!(
                    "cannot compose {} -> {} after {} -> {}",
                    self.domain.label(),
                    self.codomain.label(),
                    inner.domain.label(),
                    inner.codomain.label()
                ),
            });
        }
        Ok(LinearMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: &self.matrix * &inner.matrix,
        })
    }

    pub fn with_matrix(&self, matrix: Matrix) -> Result<LinearMap> {
        LinearMap::new(self.domain.clone(), self.codomain.clone(), matrix)
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}: {}",
            self.domain.label(),
            self.codomain.label(),
            self.matrix
        )
    }
}
