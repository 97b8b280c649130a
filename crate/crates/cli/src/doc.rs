//! JSON documents for cocycles, functors and modules.
//!
//! Matrix entries are scalar strings in canonical print syntax, row-major,
//! with columns indexed by the domain basis.

use std::collections::BTreeMap;
use std::str::FromStr;

use rga_core::bialgebra::AffineMap;
use rga_core::category::{BaseChange, Cocycle, IdentityFunctor, MatrixFunctor, TableFunctor};
use rga_core::{Alphabet, LinearMap, Matrix, Scalar, Subspace};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parse::{parse_word, ParseError};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("unknown space {0:?}")]
    UnknownSpace(String),

    #[error("space {0:?} needs exactly one of basis or dim")]
    SpaceShape(String),

    #[error("basis word {word:?} of {space}: {source}")]
    Basis {
        space: String,
        word: String,
        source: ParseError,
    },

    #[error("space {0:?} mixes T and X words")]
    MixedAlphabet(String),

    #[error("map {from} -> {to}: {detail}")]
    Map {
        from: String,
        to: String,
        detail: String,
    },

    #[error(transparent)]
    Core(#[from] rga_core::Error),
}

type Result<T> = std::result::Result<T, DocError>;

pub type MatrixDoc = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub from: String,
    pub to: String,
    pub matrix: MatrixDoc,
}

/// `maps` run around the cycle: the codomain of each is the domain of the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleDoc {
    pub spaces: Vec<SpaceDoc>,
    pub maps: Vec<MapDoc>,
    /// Pairing matrix of each object with its dual, keyed by object name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairings: Option<BTreeMap<String, MatrixDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismImageDoc {
    pub from: String,
    pub to: String,
    pub source: MatrixDoc,
    pub image: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctorSpec {
    Identity,
    BaseChange {
        matrices: BTreeMap<String, MatrixDoc>,
    },
    Table {
        objects: Vec<SpaceDoc>,
        morphisms: Vec<MorphismImageDoc>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub spaces: Vec<SpaceDoc>,
    /// Each entry is one source cocycle, given as its maps in cycle order.
    pub cocycles: Vec<Vec<MapDoc>>,
    pub functor: FunctorSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineDoc {
    pub matrix: MatrixDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Vec<String>>,
}

/// `action[i]` is the matrix by which the i-th algebra basis element acts on M.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub action: Vec<MatrixDoc>,
    pub e_a: AffineDoc,
    pub e_m: AffineDoc,
}

pub fn scalar(s: &str) -> Result<Scalar> {
    Ok(Scalar::from_str(s)?)
}

pub fn matrix(m: &MatrixDoc) -> Result<Matrix> {
    let rows = m
        .iter()
        .map(|r| r.iter().map(|s| scalar(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows)?)
}

pub fn matrix_doc(m: &Matrix) -> MatrixDoc {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect()
}

pub fn space(doc: &SpaceDoc) -> Result<Subspace> {
    match (&doc.basis, doc.dim) {
        (Some(words), None) => {
            let mut alphabet = None;
            let mut basis = Vec::with_capacity(words.len());
            for text in words {
                let (w, a) = parse_word(text).map_err(|source| DocError::Basis {
                    space: doc.name.clone(),
                    word: text.clone(),
                    source,
                })?;
                if let Some(a) = a {
                    if alphabet.is_some_and(|b| b != a) {
                        return Err(DocError::MixedAlphabet(doc.name.clone()));
                    }
                    alphabet = Some(a);
                }
                basis.push(w);
            }
            Ok(Subspace::new(
                doc.name.clone(),
                alphabet.unwrap_or(Alphabet::Theta),
                basis,
            )?)
        }
        (None, Some(dim)) => Ok(Subspace::coordinate(doc.name.clone(), dim)),
        _ => Err(DocError::SpaceShape(doc.name.clone())),
    }
}

pub fn space_doc(s: &Subspace) -> SpaceDoc {
    SpaceDoc {
        name: s.label().to_string(),
        basis: Some(
            s.basis()
                .iter()
                .map(|w| w.render(s.alphabet().symbol()))
                .collect(),
        ),
        dim: None,
    }
}

fn spaces(docs: &[SpaceDoc]) -> Result<BTreeMap<String, Subspace>> {
    docs.iter()
        .map(|d| Ok((d.name.clone(), space(d)?)))
        .collect()
}

fn lookup<'a>(spaces: &'a BTreeMap<String, Subspace>, name: &str) -> Result<&'a Subspace> {
    spaces
        .get(name)
        .ok_or_else(|| DocError::UnknownSpace(name.to_string()))
}

fn linear_map(spaces: &BTreeMap<String, Subspace>, m: &MapDoc) -> Result<LinearMap> {
    let domain = lookup(spaces, &m.from)?.clone();
    let codomain = lookup(spaces, &m.to)?.clone();
    let matrix = matrix(&m.matrix).map_err(|e| DocError::Map {
        from: m.from.clone(),
        to: m.to.clone(),
        detail: e.to_string(),
    })?;
    LinearMap::new(domain, codomain, matrix).map_err(|e| DocError::Map {
        from: m.from.clone(),
        to: m.to.clone(),
        detail: e.to_string(),
    })
}

fn cocycle(spaces: &BTreeMap<String, Subspace>, maps: &[MapDoc]) -> Result<Cocycle> {
    let maps = maps
        .iter()
        .map(|m| linear_map(spaces, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(Cocycle::new(maps)?)
}

/// A parsed cocycle document.
#[derive(Debug, Clone)]
pub struct CocycleInput {
    pub cocycle: Cocycle,
    /// In the order of the cocycle's objects.
    pub pairings: Option<Vec<Matrix>>,
}

impl CocycleDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn load(&self) -> Result<CocycleInput> {
        let spaces = spaces(&self.spaces)?;
        let cocycle = cocycle(&spaces, &self.maps)?;
        let pairings = match &self.pairings {
            None => None,
            Some(table) => Some(
                cocycle
                    .spaces()
                    .iter()
                    .map(|s| {
                        let m = table
                            .get(s.label())
                            .ok_or_else(|| DocError::UnknownSpace(s.label().to_string()))?;
                        matrix(m)
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok(CocycleInput { cocycle, pairings })
    }

    pub fn from_cocycle(c: &Cocycle, pairings: Option<&[Matrix]>) -> Self {
        let objects = c.spaces();
        CocycleDoc {
            spaces: objects.iter().map(|s| space_doc(s)).collect(),
            maps: c
                .maps()
                .iter()
                .map(|m| MapDoc {
                    from: m.domain().label().to_string(),
                    to: m.codomain().label().to_string(),
                    matrix: matrix_doc(m.matrix()),
                })
                .collect(),
            pairings: pairings.map(|ps| {
                objects
                    .iter()
                    .zip(ps)
                    .map(|(s, p)| (s.label().to_string(), matrix_doc(p)))
                    .collect()
            }),
        }
    }
}

/// A parsed functor document.
pub struct FunctorInput {
    pub functor: Box<dyn MatrixFunctor>,
    pub cocycles: Vec<Cocycle>,
}

impl FunctorDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn load(&self) -> Result<FunctorInput> {
        let spaces = spaces(&self.spaces)?;
        let cocycles = self
            .cocycles
            .iter()
            .map(|maps| cocycle(&spaces, maps))
            .collect::<Result<Vec<_>>>()?;
        let functor: Box<dyn MatrixFunctor> = match &self.functor {
            FunctorSpec::Identity => Box::new(IdentityFunctor),
            FunctorSpec::BaseChange { matrices } => {
                let mut f = BaseChange::new();
                for (label, m) in matrices {
                    f = f.with(label.clone(), matrix(m)?)?;
                }
                Box::new(f)
            }
            FunctorSpec::Table { objects, morphisms } => {
                let mut f = TableFunctor::new();
                for o in objects {
                    f = f.object(o.name.clone(), space(o)?);
                }
                for m in morphisms {
                    f = f.morphism(
                        m.from.clone(),
                        m.to.clone(),
                        matrix(&m.source)?,
                        matrix(&m.image)?,
                    );
                }
                Box::new(f)
            }
        };
        Ok(FunctorInput { functor, cocycles })
    }
}

fn affine(doc: &AffineDoc) -> Result<AffineMap> {
    let m = matrix(&doc.matrix)?;
    Ok(match &doc.offset {
        None => AffineMap::linear(m)?,
        Some(v) => AffineMap::new(m, v.iter().map(|s| scalar(s)).collect::<Result<_>>()?)?,
    })
}

pub fn affine_doc(e: &AffineMap) -> AffineDoc {
    AffineDoc {
        matrix: matrix_doc(&e.matrix),
        offset: e
            .offset
            .iter()
            .any(|s| !s.is_zero())
            .then(|| e.offset.iter().map(|s| s.to_string()).collect()),
    }
}

/// A parsed module document.
#[derive(Debug, Clone)]
pub struct ModuleInput {
    pub action: Vec<Matrix>,
    pub e_a: AffineMap,
    pub e_m: AffineMap,
}

impl ModuleDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn load(&self) -> Result<ModuleInput> {
        Ok(ModuleInput {
            action: self.action.iter().map(matrix).collect::<Result<_>>()?,
            e_a: affine(&self.e_a)?,
            e_m: affine(&self.e_m)?,
        })
    }

    pub fn from_parts(action: &[Matrix], e_a: &AffineMap, e_m: &AffineMap) -> Self {
        ModuleDoc {
            action: action.iter().map(matrix_doc).collect(),
            e_a: affine_doc(e_a),
            e_m: affine_doc(e_m),
        }
    }
}
