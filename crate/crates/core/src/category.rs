//! Categories presented by based spaces and matrices: regular cocycles,
//! their obstructions, cocycle morphisms, functors and duality.

use std::collections::BTreeMap;

use crate::element::{Alphabet, Element};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::repr::decompose;
use crate::rewrite::Word;
use crate::space::{LinearMap, Subspace};

/// A cyclic chain `X₁ →ψ₁ X₂ →ψ₂ ⋯ →ψₙ X₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    maps: Vec<LinearMap>,
}

impl Cocycle {
    pub fn new(maps: Vec<LinearMap>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::ChainMismatch {
                index: 0,
                detail: "empty chain".into(),
            });
        }
        let n = maps.len();
        for i in 0..n {
            let next = &maps[(i + 1) % n];
            if maps[i].codomain() != next.domain() {
                return Err(Error::ChainMismatch {
                    index: i + 1,
                    detail: format!(
                        "codomain {} of map {} is not the domain {} of map {}",
                        maps[i].codomain().label(),
                        i + 1,
                        next.domain().label(),
                        (i + 1) % n + 1
                    ),
                });
            }
        }
        Ok(Cocycle { maps })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[LinearMap] {
        &self.maps
    }

    /// `X₁ … Xₙ` in chain order.
    pub fn spaces(&self) -> Vec<&Subspace> {
        self.maps.iter().map(LinearMap::domain).collect()
    }

    /// `ψ_{k-1} ∘ ⋯ ∘ ψ_k`, the loop based at the 0-based position `k`.
    pub fn loop_at(&self, k: usize) -> LinearMap {
        let n = self.len();
        let mut acc = self.maps[k].clone();
        for step in 1..n {
            acc = self.maps[(k + step) % n]
                .after(&acc)
                .expect("chain type-checks");
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CocycleVerdict {
    pub holds: bool,
    /// 1-based index of the first `ψᵢ` whose identity fails.
    pub first_failure: Option<usize>,
}

/// Checks `ψᵢ ∘ ψᵢ₋₁ ∘ ⋯ ∘ ψᵢ₊₁ ∘ ψᵢ = ψᵢ` for every cyclic index.
pub fn check_regular_cocycle(c: &Cocycle) -> CocycleVerdict {
    let first_failure = (0..c.len()).find(|&i| {
        let lhs = c.maps[i].after(&c.loop_at(i)).expect("chain type-checks");
        lhs.matrix() != c.maps[i].matrix()
    });
    CocycleVerdict {
        holds: first_failure.is_none(),
        first_failure: first_failure.map(|i| i + 1),
    }
}

/// An idempotent endomorphism attached to an object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    map: LinearMap,
}

impl Obstruction {
    pub fn new(map: LinearMap) -> Result<Self> {
        if !map.is_endo() {
            return Err(Error::Dimension(format!(
                "obstruction must be an endomorphism, got {} -> {}",
                map.domain().label(),
                map.codomain().label()
            )));
        }
        Ok(Obstruction { map })
    }

    pub fn at(&self) -> &Subspace {
        self.map.domain()
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn matrix(&self) -> &Matrix {
        self.map.matrix()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_identity()
    }
}

/// `e_{Xᵢ}` for the 1-based index `i`; refuses non-regular cocycles.
pub fn obstruction_of(c: &Cocycle, i: usize) -> Result<Obstruction> {
    if i == 0 || i > c.len() {
        return Err(Error::Dimension(format!(
            "object index {i} outside 1..={}",
            c.len()
        )));
    }
    if let Some(k) = check_regular_cocycle(c).first_failure {
        return Err(Error::NotRegular(k));
    }
    let e = c.loop_at(i - 1);
    assert!(
        e.matrix().is_idempotent(),
        "obstruction of a regular cocycle must be idempotent"
    );
    Obstruction::new(e)
}

pub fn obstructions(c: &Cocycle) -> Result<Vec<Obstruction>> {
    (1..=c.len()).map(|i| obstruction_of(c, i)).collect()
}

/// Smallest chain length among the cocycles having a non-identity
/// obstruction somewhere, or `None` when every obstruction is an identity.
pub fn is_obstructed(cocycles: &[Cocycle]) -> Result<Option<usize>> {
    let mut best: Option<usize> = None;
    for c in cocycles {
        if obstructions(c)?.iter().any(|e| !e.is_identity()) {
            best = Some(best.map_or(c.len(), |b| b.min(c.len())));
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismVerdict {
    pub holds: bool,
    /// 1-based index of the first square `αᵢ₊₁∘ψᵢ = φᵢ∘αᵢ` that fails.
    pub first_failure: Option<usize>,
    /// `αᵢ ∘ e_{Xᵢ} = e_{Yᵢ} ∘ αᵢ` at every object.
    pub obstructions_intertwined: bool,
}

pub fn check_cocycle_morphism(
    alpha: &[LinearMap],
    c: &Cocycle,
    d: &Cocycle,
) -> Result<MorphismVerdict> {
    let n = c.len();
    if alpha.len() != n || d.len() != n {
        return Err(Error::Dimension(format!(
            "{} components for cocycles of length {} and {}",
            alpha.len(),
            n,
            d.len()
        )));
    }
    for (i, a) in alpha.iter().enumerate() {
        if a.domain() != c.maps[i].domain() || a.codomain() != d.maps[i].domain() {
            return Err(Error::ChainMismatch {
                index: i + 1,
                detail: format!(
                    "component {} -> {} does not connect {} to {}",
                    a.domain().label(),
                    a.codomain().label(),
                    c.maps[i].domain().label(),
                    d.maps[i].domain().label()
                ),
            });
        }
    }
    let first_failure = (0..n).find(|&i| {
        let top = alpha[(i + 1) % n].after(&c.maps[i]).expect("typed");
        let bottom = d.maps[i].after(&alpha[i]).expect("typed");
        top.matrix() != bottom.matrix()
    });
    let obstructions_intertwined = (0..n).all(|i| {
        let lhs = alpha[i].after(&c.loop_at(i)).expect("typed");
        let rhs = d.loop_at(i).after(&alpha[i]).expect("typed");
        lhs.matrix() == rhs.matrix()
    });
    Ok(MorphismVerdict {
        holds: first_failure.is_none(),
        first_failure: first_failure.map(|i| i + 1),
        obstructions_intertwined,
    })
}

/// `β ∘ e ∘ β⁻¹ = e′` for a supplied invertible `β`.
pub fn check_obstruction_equivalence(
    e: &Obstruction,
    e_prime: &Obstruction,
    beta: &Matrix,
) -> Result<bool> {
    let inv = beta
        .inverse()
        .ok_or_else(|| Error::Dimension("β is not invertible".into()))?;
    let conj = beta.checked_mul(e.matrix())?.checked_mul(&inv)?;
    Ok(&conj == e_prime.matrix())
}

/// A functor between matrix-presented categories.
pub trait MatrixFunctor {
    fn map_space(&self, x: &Subspace) -> Result<Subspace>;
    fn map_morphism(&self, f: &LinearMap) -> Result<LinearMap>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityFunctor;

impl MatrixFunctor for IdentityFunctor {
    fn map_space(&self, x: &Subspace) -> Result<Subspace> {
        Ok(x.clone())
    }

    fn map_morphism(&self, f: &LinearMap) -> Result<LinearMap> {
        Ok(f.clone())
    }
}

/// Conjugates every morphism by a fixed invertible matrix per object:
/// `F(ψ) = P_Y ψ P_X⁻¹`. Objects without a matrix are left alone.
#[derive(Clone, Debug, Default)]
pub struct BaseChange {
    changes: BTreeMap<String, (Matrix, Matrix)>,
}

impl BaseChange {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, label: impl Into<String>, p: Matrix) -> Result<Self> {
        let label = label.into();
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Dimension(format!("base change at {label} is singular")))?;
        self.changes.insert(label, (p, inv));
        Ok(self)
    }

    pub fn matrices(&self) -> impl Iterator<Item = (&str, &Matrix)> {
        self.changes.iter().map(|(k, (p, _))| (k.as_str(), p))
    }
}

impl MatrixFunctor for BaseChange {
    fn map_space(&self, x: &Subspace) -> Result<Subspace> {
        if let Some((p, _)) = self.changes.get(x.label()) {
            if p.rows() != x.dim() || !p.is_square() {
                return Err(Error::Dimension(format!(
                    "base change at {} has size {}x{}, object has dimension {}",
                    x.label(),
                    p.rows(),
                    p.cols(),
                    x.dim()
                )));
            }
        }
        Ok(x.clone())
    }

    fn map_morphism(&self, f: &LinearMap) -> Result<LinearMap> {
        self.map_space(f.domain())?;
        self.map_space(f.codomain())?;
        let mut m = f.matrix().clone();
        if let Some((_, inv)) = self.changes.get(f.domain().label()) {
            m = m.checked_mul(inv)?;
        }
        if let Some((p, _)) = self.changes.get(f.codomain().label()) {
            m = p.checked_mul(&m)?;
        }
        f.with_matrix(m)
    }
}

/// A functor given by an explicit table on the morphisms it will be asked
/// about. Identities not listed are sent to identities.
#[derive(Clone, Debug, Default)]
pub struct TableFunctor {
    objects: BTreeMap<String, Subspace>,
    morphisms: Vec<(String, String, Matrix, Matrix)>,
}

impl TableFunctor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, label: impl Into<String>, image: Subspace) -> Self {
        self.objects.insert(label.into(), image);
        self
    }

    pub fn morphism(
        mut self,
        from: impl Into<String>,
        to: impl Into<String>,
        source: Matrix,
        image: Matrix,
    ) -> Self {
        self.morphisms.push((from.into(), to.into(), source, image));
        self
    }

    pub fn objects(&self) -> &BTreeMap<String, Subspace> {
        &self.objects
    }

    pub fn morphisms(&self) -> &[(String, String, Matrix, Matrix)] {
        &self.morphisms
    }
}

impl MatrixFunctor for TableFunctor {
    fn map_space(&self, x: &Subspace) -> Result<Subspace> {
        Ok(self
            .objects
            .get(x.label())
            .cloned()
            .unwrap_or_else(|| x.clone()))
    }

    fn map_morphism(&self, f: &LinearMap) -> Result<LinearMap> {
        let (from, to) = (f.domain().label(), f.codomain().label());
        let dom = self.map_space(f.domain())?;
        let cod = self.map_space(f.codomain())?;
        let hit = self
            .morphisms
            .iter()
            .find(|(a, b, m, _)| a == from && b == to && m == f.matrix());
        match hit {
            Some((_, _, _, image)) => LinearMap::new(dom, cod, image.clone()),
            None if f.is_identity() && dom == cod => Ok(LinearMap::identity(&dom)),
            None => Err(Error::NotAFunctor(format!(
                "no image for {from} -> {to}: {}",
                f.matrix()
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorReport {
    /// `F(e_{Xᵢ})` equals the obstruction of the image chain and is idempotent.
    pub obstruction_preserved: bool,
    /// Every image chain is a regular cocycle.
    pub image_regular: bool,
    /// `F(ψᵢ) ∘ F(e_{Xᵢ}) = F(ψᵢ)` throughout.
    pub lemma_identity: bool,
    pub images: Vec<Cocycle>,
}

impl FunctorReport {
    pub fn holds(&self) -> bool {
        self.obstruction_preserved && self.image_regular && self.lemma_identity
    }
}

fn not_functor(e: Error) -> Error {
    match e {
        Error::NotAFunctor(_) => e,
        other => Error::NotAFunctor(other.to_string()),
    }
}

/// Checks composition on every consecutive pair and every full loop of the
/// source cocycles, then the obstruction and regularity conditions.
pub fn check_obstructed_functor<F: MatrixFunctor + ?Sized>(
    functor: &F,
    source: &[Cocycle],
) -> Result<FunctorReport> {
    let mut report = FunctorReport {
        obstruction_preserved: true,
        image_regular: true,
        lemma_identity: true,
        images: Vec::new(),
    };
    for c in source {
        if let Some(k) = check_regular_cocycle(c).first_failure {
            return Err(Error::NotRegular(k));
        }
        let n = c.len();
        let images: Vec<LinearMap> = c
            .maps()
            .iter()
            .map(|m| functor.map_morphism(m))
            .collect::<Result<_>>()
            .map_err(not_functor)?;
        for i in 0..n {
            let j = (i + 1) % n;
            let composite = c.maps[j].after(&c.maps[i])?;
            let lhs = functor.map_morphism(&composite).map_err(not_functor)?;
            let rhs = images[j].after(&images[i]).map_err(not_functor)?;
            if lhs != rhs {
                return Err(Error::NotAFunctor(format!(
                    "F(ψ{}∘ψ{}) = {} but F(ψ{})∘F(ψ{}) = {}",
                    j + 1,
                    i + 1,
                    lhs.matrix(),
                    j + 1,
                    i + 1,
                    rhs.matrix()
                )));
            }
        }
        let image = Cocycle::new(images).map_err(not_functor)?;
        for i in 0..n {
            let fe = functor.map_morphism(&c.loop_at(i)).map_err(not_functor)?;
            let image_loop = image.loop_at(i);
            if fe != image_loop {
                return Err(Error::NotAFunctor(format!(
                    "F(e_{}) = {} but the image loop is {}",
                    c.maps[i].domain().label(),
                    fe.matrix(),
                    image_loop.matrix()
                )));
            }
            if !fe.matrix().is_idempotent() {
                report.obstruction_preserved = false;
            }
            if image.maps[i].after(&fe)?.matrix() != image.maps[i].matrix() {
                report.lemma_identity = false;
            }
        }
        if !check_regular_cocycle(&image).holds {
            report.image_regular = false;
        }
        report.images.push(image);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityVerdict {
    pub holds: bool,
    /// 0-based indices of the supplied morphisms whose square fails.
    pub failures: Vec<usize>,
}

/// `s_Y ∘ F(α) = G(α) ∘ s_X` for every supplied `α: X → Y`; `components`
/// is keyed by source object label.
pub fn check_natural_transformation<F, G>(
    components: &BTreeMap<String, LinearMap>,
    f: &F,
    g: &G,
    morphisms: &[LinearMap],
) -> Result<NaturalityVerdict>
where
    F: MatrixFunctor + ?Sized,
    G: MatrixFunctor + ?Sized,
{
    let component = |x: &Subspace| {
        components
            .get(x.label())
            .ok_or_else(|| Error::Dimension(format!("no component at {}", x.label())))
    };
    let mut failures = Vec::new();
    for (k, alpha) in morphisms.iter().enumerate() {
        let sx = component(alpha.domain())?;
        let sy = component(alpha.codomain())?;
        let lhs = sy.after(&f.map_morphism(alpha)?)?;
        let rhs = g.map_morphism(alpha)?.after(sx)?;
        if lhs.matrix() != rhs.matrix() {
            failures.push(k);
        }
    }
    Ok(NaturalityVerdict {
        holds: failures.is_empty(),
        failures,
    })
}

/// `e_{X⊗Y} = e_X ⊗ e_Y` with the pairwise (row-major) basis order.
pub fn tensor_obstruction_check(
    ex: &Obstruction,
    ey: &Obstruction,
    exy: &Obstruction,
) -> Result<bool> {
    let (dx, dy, dxy) = (ex.at().dim(), ey.at().dim(), exy.at().dim());
    if dx * dy != dxy {
        return Err(Error::Dimension(format!(
            "tensor object has dimension {dxy}, expected {dx}·{dy}"
        )));
    }
    Ok(&ex.matrix().kron(ey.matrix()) == exy.matrix())
}

/// The dual object: label with `^v`, basis words reversed in the other alphabet.
pub fn dual_space(x: &Subspace) -> Subspace {
    Subspace::new(
        format!("{}^v", x.label()),
        x.alphabet().other(),
        x.basis().iter().map(Word::reversed).collect(),
    )
    .expect("reversal keeps words distinct")
}

/// Pairing matrix `G[r][s] = ⟨x^∨_r | x_s⟩` under word reversal.
pub fn reversal_pairing(dual: &Subspace, x: &Subspace) -> Matrix {
    let mut g = Matrix::zeros(dual.dim(), x.dim());
    for (r, u) in dual.basis().iter().enumerate() {
        for (s, v) in x.basis().iter().enumerate() {
            if &u.reversed() == v {
                g.set(r, s, crate::scalar::Scalar::one());
            }
        }
    }
    g
}

/// Position in the dual chain of the dual of `X_k` (0-based): the dual chain
/// runs `X₁^∨ → Xₙ^∨ → ⋯ → X₂^∨ → X₁^∨`.
pub fn dual_position(n: usize, k: usize) -> usize {
    (n - k) % n
}

/// Dual cocycle with `ψᵢ^∨ = Gᵢ^{-T} ψᵢ^T Gᵢ₊₁^T`, arrows reversed.
/// `pairings[k]` pairs the dual of `X_k` with `X_k`.
pub fn dual_cocycle(c: &Cocycle, pairings: &[Matrix]) -> Result<Cocycle> {
    let n = c.len();
    if pairings.len() != n {
        return Err(Error::Dimension(format!(
            "{} pairing matrices for {} objects",
            pairings.len(),
            n
        )));
    }
    let spaces: Vec<Subspace> = c.spaces().into_iter().map(dual_space).collect();
    let mut inv_t = Vec::with_capacity(n);
    for (k, g) in pairings.iter().enumerate() {
        if g.rows() != spaces[k].dim() || g.cols() != spaces[k].dim() {
            return Err(Error::Dimension(format!(
                "pairing at {} must be {}x{}",
                spaces[k].label(),
                spaces[k].dim(),
                spaces[k].dim()
            )));
        }
        let inv = g.inverse().ok_or_else(|| {
            Error::DegeneratePairing(format!("pairing at {} is singular", spaces[k].label()))
        })?;
        inv_t.push(inv.transpose());
    }
    let dual_map = |i: usize| -> Result<LinearMap> {
        let j = (i + 1) % n;
        let m = inv_t[i]
            .checked_mul(&c.maps[i].matrix().transpose())?
            .checked_mul(&pairings[j].transpose())?;
        LinearMap::new(spaces[j].clone(), spaces[i].clone(), m)
    };
    let maps = (0..n)
        .map(|step| dual_map((n - 1 + n - step) % n))
        .collect::<Result<Vec<_>>>()?;
    Cocycle::new(maps)
}

/// `⟨e_{X^∨}(x^∨), x⟩ = ⟨x^∨, e_X(x)⟩` on all basis pairs of every object.
pub fn duality_identity_holds(c: &Cocycle, dual: &Cocycle, pairings: &[Matrix]) -> bool {
    let n = c.len();
    (0..n).all(|k| {
        let e = c.loop_at(k);
        let e_dual = dual.loop_at(dual_position(n, k));
        let lhs = &e_dual.matrix().transpose() * &pairings[k];
        let rhs = &pairings[k] * e.matrix();
        lhs == rhs
    })
}

/// Output of [`build_ca`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaBuild {
    pub cocycle: Cocycle,
    /// Words dropped from an object because some map sent them outside the truncation.
    pub escaped: Vec<(String, Word)>,
    pub verdict: CocycleVerdict,
}

impl CaBuild {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for m in self.cocycle.maps() {
            out.push_str(&format!("{}\n", m.domain()));
        }
        for (i, m) in self.cocycle.maps().iter().enumerate() {
            out.push_str(&format!("psi{} {}\n", i + 1, m));
        }
        if self.escaped.is_empty() {
            out.push_str("escaped: none\n");
        }
        for (label, w) in &self.escaped {
            out.push_str(&format!("escaped: {} from {}\n", w.render('T'), label));
        }
        match self.verdict.first_failure {
            None => out.push_str("regular cocycle: true\n"),
            Some(i) => out.push_str(&format!(
                "regular cocycle: false (first failure at psi{i})\n"
            )),
        }
        out
    }
}

/// The category `C_A^(n)`: objects `Xᵢ` (words beginning with `i`, up to
/// `max_deg`) and `fᵢ = L_{Θᵢ}: Xᵢ₊₁ → Xᵢ`, arranged as the cocycle
/// `X₁ →fₙ Xₙ →fₙ₋₁ ⋯ →f₁ X₁`. Basis words whose image leaves the
/// truncation are removed until every map is closed, and reported.
pub fn build_ca(n: usize, max_deg: usize) -> Result<CaBuild> {
    if n < 2 {
        return Err(Error::Dimension(format!("C_A needs n >= 2, got {n}")));
    }
    let xs = decompose(n, max_deg);
    // chain position p holds X_{space_index(p)}; map p is f_{space_index(p+1)}
    let space_index = |p: usize| if p == 0 { 0 } else { n - p };
    let mut bases: Vec<Vec<Word>> = (0..n)
        .map(|p| xs[space_index(p)].basis().to_vec())
        .collect();
    let generator = |p: usize| -> Result<Element> {
        Element::generator(n, Alphabet::Theta, space_index((p + 1) % n) + 1)
    };
    let mut escaped = Vec::new();
    loop {
        let mut changed = false;
        for p in 0..n {
            let q = (p + 1) % n;
            let g = generator(p)?;
            let target = bases[q].clone();
            let mut keep = Vec::new();
            for w in &bases[p] {
                let y = g.checked_mul(&Element::word(n, Alphabet::Theta, w)?)?;
                if y.terms().all(|(u, _)| target.contains(u)) {
                    keep.push(w.clone());
                } else {
                    escaped.push((xs[space_index(p)].label().to_string(), w.clone()));
                    changed = true;
                }
            }
            bases[p] = keep;
        }
        if !changed {
            break;
        }
    }
    let spaces: Vec<Subspace> = (0..n)
        .map(|p| {
            Subspace::new(
                xs[space_index(p)].label(),
                Alphabet::Theta,
                bases[p].clone(),
            )
        })
        .collect::<Result<_>>()?;
    let maps = (0..n)
        .map(|p| crate::repr::left_mul_map(&generator(p)?, &spaces[p], &spaces[(p + 1) % n]))
        .collect::<Result<Vec<_>>>()?;
    let cocycle = Cocycle::new(maps)?;
    let verdict = check_regular_cocycle(&cocycle);
    Ok(CaBuild {
        cocycle,
        escaped,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(from: &Subspace, to: &Subspace, rows: &[&[i64]]) -> LinearMap {
        LinearMap::new(from.clone(), to.clone(), Matrix::from_ints(rows)).unwrap()
    }

    fn two_cycle(a: &[&[i64]], b: &[&[i64]], d1: usize, d2: usize) -> Cocycle {
        let x1 = Subspace::coordinate("X1", d1);
        let x2 = Subspace::coordinate("X2", d2);
        Cocycle::new(vec![map(&x1, &x2, a), map(&x2, &x1, b)]).unwrap()
    }

    #[test]
    fn ca2_is_the_swap_presentation() {
        let built = build_ca(2, 2).unwrap();
        let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert!(built.escaped.is_empty());
        assert!(built.verdict.holds);
        for m in built.cocycle.maps() {
            assert_eq!(m.matrix(), &swap);
        }
        assert!(obstruction_of(&built.cocycle, 1).unwrap().is_identity());
        assert_eq!(is_obstructed(&[built.cocycle]).unwrap(), None);
    }

    #[test]
    fn zero_partner_fails_at_two() {
        let c = two_cycle(&[&[0]], &[&[1]], 1, 1);
        assert_eq!(
            check_regular_cocycle(&c),
            CocycleVerdict {
                holds: false,
                first_failure: Some(2)
            }
        );
        assert_eq!(obstruction_of(&c, 1), Err(Error::NotRegular(2)));
    }

    #[test]
    fn chain_mismatch_names_index() {
        let x1 = Subspace::coordinate("X1", 1);
        let x2 = Subspace::coordinate("X2", 1);
        let err = Cocycle::new(vec![map(&x1, &x2, &[&[1]]), map(&x1, &x2, &[&[1]])]).unwrap_err();
        assert!(matches!(err, Error::ChainMismatch { index: 1, .. }));
    }

    #[test]
    fn projection_cocycle_is_obstructed() {
        let c = two_cycle(&[&[1], &[0]], &[&[1, 0]], 1, 2);
        assert!(check_regular_cocycle(&c).holds);
        assert_eq!(
            obstruction_of(&c, 2).unwrap().matrix(),
            &Matrix::from_ints(&[&[1, 0], &[0, 0]])
        );
        assert_eq!(is_obstructed(&[c]).unwrap(), Some(2));
        assert_eq!(is_obstructed(&[]).unwrap(), None);
    }

    #[test]
    fn morphism_squares() {
        let c = build_ca(2, 2).unwrap().cocycle;
        let ids: Vec<LinearMap> = c.spaces().into_iter().map(LinearMap::identity).collect();
        let v = check_cocycle_morphism(&ids, &c, &c).unwrap();
        assert!(v.holds && v.obstructions_intertwined);
        let mut bad = ids.clone();
        bad[1] = bad[1]
            .with_matrix(Matrix::from_ints(&[&[2, 0], &[0, 1]]))
            .unwrap();
        let v = check_cocycle_morphism(&bad, &c, &c).unwrap();
        assert_eq!(v.first_failure, Some(1));
    }

    #[test]
    fn functors() {
        let c = build_ca(2, 2).unwrap().cocycle;
        assert!(
            check_obstructed_functor(&IdentityFunctor, std::slice::from_ref(&c))
                .unwrap()
                .holds()
        );
        let f = BaseChange::new()
            .with("X1", Matrix::from_ints(&[&[1, 1], &[0, 1]]))
            .unwrap()
            .with("X2", Matrix::from_ints(&[&[2, 0], &[1, 1]]))
            .unwrap();
        let rep = check_obstructed_functor(&f, &[c]).unwrap();
        assert!(rep.holds());

        let one = two_cycle(&[&[1]], &[&[1]], 1, 1);
        let m1 = Matrix::from_ints(&[&[1]]);
        let m2 = Matrix::from_ints(&[&[2]]);
        let t = TableFunctor::new()
            .morphism("X1", "X2", m1.clone(), m1.clone())
            .morphism("X2", "X1", m1.clone(), m2.clone())
            .morphism("X1", "X1", m1.clone(), m2.clone())
            .morphism("X2", "X2", m1.clone(), m2.clone());
        let rep = check_obstructed_functor(&t, std::slice::from_ref(&one)).unwrap();
        assert!(!rep.obstruction_preserved && !rep.lemma_identity && !rep.image_regular);

        let broken = TableFunctor::new()
            .morphism("X1", "X2", m1.clone(), m1.clone())
            .morphism("X2", "X1", m1.clone(), m1.clone())
            .morphism("X1", "X1", m1.clone(), m2.clone());
        assert!(matches!(
            check_obstructed_functor(&broken, &[one]),
            Err(Error::NotAFunctor(_))
        ));
    }

    #[test]
    fn naturality() {
        let c = build_ca(2, 2).unwrap().cocycle;
        let mut comps: BTreeMap<String, LinearMap> = c
            .spaces()
            .into_iter()
            .map(|x| (x.label().to_string(), LinearMap::identity(x)))
            .collect();
        let v = check_natural_transformation(&comps, &IdentityFunctor, &IdentityFunctor, c.maps())
            .unwrap();
        assert!(v.holds);
        let x1 = c.spaces()[0].clone();
        comps.insert(
            "X1".into(),
            LinearMap::identity(&x1)
                .with_matrix(Matrix::from_ints(&[&[2, 0], &[0, 2]]))
                .unwrap(),
        );
        let v = check_natural_transformation(&comps, &IdentityFunctor, &IdentityFunctor, c.maps())
            .unwrap();
        assert_eq!(v.failures, vec![0, 1]);
    }

    #[test]
    fn kronecker_obstruction() {
        let x = Subspace::coordinate("X", 2);
        let y = Subspace::coordinate("Y", 2);
        let xy = Subspace::coordinate("XY", 4);
        let ob = |s: &Subspace, m: Matrix| {
            Obstruction::new(LinearMap::new(s.clone(), s.clone(), m).unwrap()).unwrap()
        };
        let ex = ob(&x, Matrix::from_ints(&[&[1, 0], &[0, 0]]));
        let ey = ob(&y, Matrix::identity(2));
        let good = ob(
            &xy,
            Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]),
        );
        assert!(tensor_obstruction_check(&ex, &ey, &good).unwrap());
        assert!(!tensor_obstruction_check(&ex, &ey, &ob(&xy, Matrix::identity(4))).unwrap());
        assert!(tensor_obstruction_check(&ex, &ey, &ex).is_err());
    }

    #[test]
    fn dual_of_ca2() {
        let c = build_ca(2, 2).unwrap().cocycle;
        let g = vec![Matrix::identity(2), Matrix::identity(2)];
        for (k, x) in c.spaces().into_iter().enumerate() {
            assert_eq!(reversal_pairing(&dual_space(x), x), g[k]);
        }
        let d = dual_cocycle(&c, &g).unwrap();
        assert!(check_regular_cocycle(&d).holds);
        assert_eq!(d.spaces()[0].render_basis(), "{X1, X2 X1}");
        assert!(duality_identity_holds(&c, &d, &g));
        assert!(matches!(
            dual_cocycle(&c, &[Matrix::zeros(2, 2), Matrix::identity(2)]),
            Err(Error::DegeneratePairing(_))
        ));
    }

    #[test]
    fn dual_of_three_cycle_over_skew_pairings() {
        let x: Vec<Subspace> = (1..=3)
            .map(|i| Subspace::coordinate(format!("X{i}"), 2))
            .collect();
        let c = Cocycle::new(vec![
            map(&x[0], &x[1], &[&[1, 0], &[0, 0]]),
            map(&x[1], &x[2], &[&[1, 0], &[1, 0]]),
            map(&x[2], &x[0], &[&[1, 0], &[0, 0]]),
        ])
        .unwrap();
        assert!(check_regular_cocycle(&c).holds);
        let g = vec![
            Matrix::from_ints(&[&[1, 2], &[0, 1]]),
            Matrix::from_ints(&[&[0, 1], &[1, 0]]),
            Matrix::from_ints(&[&[3, 1], &[1, 1]]),
        ];
        let d = dual_cocycle(&c, &g).unwrap();
        assert!(check_regular_cocycle(&d).holds);
        assert!(duality_identity_holds(&c, &d, &g));
    }

    #[test]
    fn ca3_truncation_reports_escapes() {
        let built = build_ca(3, 4).unwrap();
        assert!(!built.escaped.is_empty());
        assert_eq!(built.cocycle.len(), 3);
    }

    #[test]
    fn equivalence_by_conjugation() {
        let x = Subspace::coordinate("X", 2);
        let e = Obstruction::new(
            LinearMap::new(x.clone(), x.clone(), Matrix::from_ints(&[&[1, 0], &[0, 0]])).unwrap(),
        )
        .unwrap();
        let e2 = Obstruction::new(
            LinearMap::new(x.clone(), x, Matrix::from_ints(&[&[0, 0], &[0, 1]])).unwrap(),
        )
        .unwrap();
        let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert!(check_obstruction_equivalence(&e, &e2, &swap).unwrap());
        assert!(!check_obstruction_equivalence(&e, &e2, &Matrix::identity(2)).unwrap());
    }
}
