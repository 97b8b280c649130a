//! Left/right multiplication operators, the representation check, the
//! `X_i` decomposition and the ℤ₂-grading check.

use crate::element::{Alphabet, Element};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rewrite::{parity, RewriteSystem, Word};
use crate::space::{LinearMap, Subspace};

fn mul_map(
    domain: &Subspace,
    codomain: &Subspace,
    n: usize,
    op: impl Fn(&Element) -> Result<Element>,
) -> Result<LinearMap> {
    let mut m = Matrix::zeros(codomain.dim(), domain.dim());
    for (j, w) in domain.basis().iter().enumerate() {
        let x = Element::word(n, domain.alphabet(), w)?;
        let y = op(&x)?;
        let col = codomain.coordinates(&y).map_err(|_| Error::EscapesSpan {
            word: w.render(domain.alphabet().symbol()),
            product: y.to_string(),
            codomain: codomain.label().to_string(),
        })?;
        for (i, c) in col.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    LinearMap::new(domain.clone(), codomain.clone(), m)
}

/// Matrix of `x ↦ a·x` from `domain` to `codomain`.
pub fn left_mul_map(a: &Element, domain: &Subspace, codomain: &Subspace) -> Result<LinearMap> {
    mul_map(domain, codomain, a.n(), |x| a.checked_mul(x))
}

/// Matrix of `x ↦ x·a` from `domain` to `codomain`.
pub fn right_mul_map(a: &Element, domain: &Subspace, codomain: &Subspace) -> Result<LinearMap> {
    mul_map(domain, codomain, a.n(), |x| x.checked_mul(a))
}

/// The whole RGA(2) as a based space on (1, Θ₁, Θ₂, Θ₁Θ₂, Θ₂Θ₁).
pub fn full_space2(alphabet: Alphabet) -> Subspace {
    Subspace::new("A", alphabet, crate::element::basis2().to_vec()).expect("distinct basis")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationReport {
    pub n: usize,
    pub max_deg: usize,
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl RepresentationReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_table(&self) -> String {
        let mut s = format!(
            "# representation check, n = {}, max_deg = {}\n",
            self.n, self.max_deg
        );
        s.push_str("L_Ti L_Tj = L_(Ti Tj) and R_Ti R_Tj = R_(Tj Ti) on every normal word\n");
        for c in &self.counterexamples {
            s.push_str(&format!("counterexample: {c}\n"));
        }
        s.push_str(&format!(
            "checked: {}, counterexamples: {}, verdict: {}\n",
            self.checked,
            self.counterexamples.len(),
            if self.holds() { "pass" } else { "fail" }
        ));
        s
    }
}

/// Verifies `L_{Θi}∘L_{Θj} = L_{ΘiΘj}` and `R_{Θi}∘R_{Θj} = R_{ΘjΘi}` on all
/// normal-form words of length ≤ `max_deg`.
pub fn check_representation(n: usize, max_deg: usize) -> RepresentationReport {
    let sys = RewriteSystem::new(n);
    let el = |w: &Word| Element::word(n, Alphabet::Theta, w).expect("letters in range");
    let gens: Vec<Element> = (1..=n).map(|i| el(&Word::generator(i))).collect();
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for w in sys.enumerate_normal_forms(max_deg) {
        let x = el(&w);
        for (i, gi) in gens.iter().enumerate() {
            for (j, gj) in gens.iter().enumerate() {
                let gij = gi * gj;
                let gji = gj * gi;
                let left_seq = gi * &(gj * &x);
                let left_once = &gij * &x;
                if left_seq != left_once {
                    counterexamples.push(format!(
                        "L_T{} L_T{} ({}) = {} but L_(T{} T{}) gives {}",
                        i + 1,
                        j + 1,
                        x,
                        left_seq,
                        i + 1,
                        j + 1,
                        left_once
                    ));
                }
                let right_seq = &(&x * gj) * gi;
                let right_once = &x * &gji;
                if right_seq != right_once {
                    counterexamples.push(format!(
                        "R_T{} R_T{} ({}) = {} but R_(T{} T{}) gives {}",
                        i + 1,
                        j + 1,
                        x,
                        right_seq,
                        j + 1,
                        i + 1,
                        right_once
                    ));
                }
                checked += 2;
            }
        }
    }
    RepresentationReport {
        n,
        max_deg,
        checked,
        counterexamples,
    }
}

/// `X_i` = normal-form words of length 1..=`max_deg` beginning with generator `i`.
pub fn decompose(n: usize, max_deg: usize) -> Vec<Subspace> {
    let words = RewriteSystem::new(n).enumerate_normal_forms(max_deg);
    (1..=n)
        .map(|i| {
            let basis = words
                .iter()
                .filter(|w| w.first() == Some(i))
                .cloned()
                .collect();
            Subspace::new(format!("X{i}"), Alphabet::Theta, basis).expect("distinct words")
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingReport {
    pub expected: u8,
    pub product: String,
    pub violations: Vec<String>,
}

impl GradingReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn parity_violation(label: &str, value: &Element, expected: u8) -> Option<String> {
    if value.is_zero() {
        return None;
    }
    match value.homogeneous_parity() {
        Some(p) if p == expected => None,
        Some(p) => Some(format!(
            "{label} = {value} has parity {p}, expected {expected}"
        )),
        None => Some(format!(
            "{label} = {value} is not homogeneous, expected parity {expected}"
        )),
    }
}

/// Checks `|ab| = |a| + |b|` and, for odd inputs, closure of the odd part
/// under the triple products `aba` and `bab`.
pub fn grading_check(a: &Element, b: &Element) -> Result<GradingReport> {
    let pa = a
        .homogeneous_parity()
        .ok_or_else(|| Error::NotHomogeneous(a.to_string()))?;
    let pb = b
        .homogeneous_parity()
        .ok_or_else(|| Error::NotHomogeneous(b.to_string()))?;
    let ab = a.checked_mul(b)?;
    let expected = (pa + pb) % 2;
    let mut violations = Vec::new();
    violations.extend(parity_violation("ab", &ab, expected));
    if pa == 1 && pb == 1 {
        violations.extend(parity_violation("aba", &(&ab * a), 1));
        violations.extend(parity_violation("bab", &(&(b * a) * b), 1));
    }
    Ok(GradingReport {
        expected,
        product: ab.to_string(),
        violations,
    })
}

/// Runs [`grading_check`] on every pair of non-unit normal words of length ≤ `max_len`.
pub fn grading_survey(n: usize, max_len: usize) -> String {
    let words: Vec<Word> = RewriteSystem::new(n)
        .enumerate_normal_forms(max_len)
        .into_iter()
        .filter(|w| !w.is_unit())
        .collect();
    let mut lines = Vec::new();
    let mut pairs = 0;
    for u in &words {
        for v in &words {
            pairs += 1;
            let a = Element::word(n, Alphabet::Theta, u).expect("in range");
            let b = Element::word(n, Alphabet::Theta, v).expect("in range");
            let report = grading_check(&a, &b).expect("words are homogeneous");
            for viol in report.violations {
                lines.push(format!("{} * {}: {}", a, b, viol));
            }
        }
    }
    let mut s = format!("# grading survey, n = {n}, words up to length {max_len}\n");
    s.push_str(&format!(
        "collapse changes length by {n}, parity preserved by rewriting: {}\n",
        n.is_multiple_of(2)
    ));
    for l in &lines {
        s.push_str(l);
        s.push('\n');
    }
    s.push_str(&format!("pairs: {pairs}, violations: {}\n", lines.len()));
    s
}

/// Parity changes of single rewrite normalisations: `(word, nf)` pairs where
/// the normal form is nonzero and has different parity from the word.
pub fn parity_breaks(n: usize, max_len: usize) -> Vec<(Word, Word)> {
    let sys = RewriteSystem::new(n);
    let mut out = Vec::new();
    let mut layer = vec![Word::unit()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (1..=n).map(move |l| w.concat(&Word::generator(l))))
            .collect();
        for w in &layer {
            if let Some(nf) = sys.normal_form_traced(w).0 {
                if parity(&nf) != parity(w) {
                    out.push((w.clone(), nf));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(n: usize, i: usize) -> Element {
        Element::generator(n, Alphabet::Theta, i).unwrap()
    }

    fn space(label: &str, words: &[&[usize]]) -> Subspace {
        Subspace::new(
            label,
            Alphabet::Theta,
            words.iter().map(|w| Word::from(*w)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn left_mul_by_t2_swaps_coordinates() {
        let x1 = space("X1", &[&[1], &[1, 2]]);
        let x2 = space("X2", &[&[2], &[2, 1]]);
        let l2 = left_mul_map(&gen(2, 2), &x1, &x2).unwrap();
        assert_eq!(l2.matrix(), &Matrix::from_ints(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn unit_acts_as_identity() {
        let x1 = space("X1", &[&[1], &[1, 2]]);
        let one = Element::one(2, Alphabet::Theta);
        assert!(left_mul_map(&one, &x1, &x1).unwrap().is_identity());
    }

    #[test]
    fn composite_of_left_operators() {
        let x1 = space("X1", &[&[1], &[1, 2]]);
        let x2 = space("X2", &[&[2], &[2, 1]]);
        let l1 = left_mul_map(&gen(2, 1), &x2, &x1).unwrap();
        let l2 = left_mul_map(&gen(2, 2), &x1, &x2).unwrap();
        let l12 = left_mul_map(&(&gen(2, 1) * &gen(2, 2)), &x1, &x1).unwrap();
        assert_eq!(l1.after(&l2).unwrap(), l12);
    }

    #[test]
    fn escaping_product_is_named() {
        let x1 = space("X1", &[&[1]]);
        let err = left_mul_map(&gen(2, 2), &x1, &x1).unwrap_err();
        match err {
            Error::EscapesSpan { word, product, .. } => {
                assert_eq!(word, "T1");
                assert_eq!(product, "T2 T1");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn representation_n2() {
        assert!(check_representation(2, 2).holds());
    }

    #[test]
    fn decomposition_n2_and_n3() {
        let xs = decompose(2, 2);
        assert_eq!(xs[0].basis(), &[Word::from([1]), Word::from([1, 2])]);
        assert_eq!(xs[1].basis(), &[Word::from([2]), Word::from([2, 1])]);
        let ys = decompose(3, 1);
        for (i, y) in ys.iter().enumerate() {
            assert_eq!(y.basis(), &[Word::generator(i + 1)]);
        }
    }

    #[test]
    fn decomposition_covers_normal_forms() {
        for (n, d) in [(2, 4), (3, 3), (4, 3)] {
            let mut all: Vec<Word> = decompose(n, d)
                .iter()
                .flat_map(|x| x.basis().to_vec())
                .collect();
            all.push(Word::unit());
            all.sort();
            assert_eq!(all, RewriteSystem::new(n).enumerate_normal_forms(d));
        }
    }

    #[test]
    fn grading_n2() {
        let (t1, t2) = (gen(2, 1), gen(2, 2));
        let r = grading_check(&t1, &t2).unwrap();
        assert!(r.holds());
        assert_eq!(r.expected, 0);
        // triple product Θ₁Θ₂Θ₁ = Θ₁ stays odd
        assert_eq!(&(&t1 * &t2) * &t1, t1);
        assert!(grading_check(&t1, &t1).unwrap().holds());
    }

    #[test]
    fn grading_n3_violation() {
        let a = Element::word(3, Alphabet::Theta, &Word::from([1, 2, 3])).unwrap();
        let r = grading_check(&a, &gen(3, 1)).unwrap();
        assert!(!r.holds());
        assert_eq!(r.product, "T1");
    }

    #[test]
    fn grading_rejects_inhomogeneous() {
        let a = &Element::one(2, Alphabet::Theta) + &gen(2, 1);
        assert!(matches!(
            grading_check(&a, &a),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn parity_preserved_iff_n_even() {
        assert!(parity_breaks(2, 6).is_empty());
        assert!(parity_breaks(4, 6).is_empty());
        assert!(!parity_breaks(3, 5).is_empty());
    }
}
