//! Plain-text reports whose content is pinned by snapshot tests.

use crate::bialgebra::{
    almost_bialgebra_table, check_dual3, check_regular_module, coassociativity_failures,
    dual_comultiplication, multiplication_action2, regular_coalgebra_failures, AffineMap,
};
use crate::category::build_ca;
use crate::element::{Alphabet, Element};
use crate::error::Result;
use crate::repr::{check_representation, full_space2, grading_survey, left_mul_map, right_mul_map};
use crate::rewrite::{RewriteSystem, Word};
use crate::rga2::{basis_elements, obstructed_product, obstructed_product_swapped, obstruction_e2};
use crate::scalar::Scalar;
use crate::wick::{
    check_regular_cross_symmetry, conjugate_map, wick_mul_regular, CrossSymmetry, Vacuum,
    WickElement,
};

pub fn confluence(n: usize) -> String {
    RewriteSystem::new(n).check_local_confluence().to_table()
}

pub fn representation(n: usize, max_deg: usize) -> String {
    check_representation(n, max_deg).to_table()
}

pub fn grading(n: usize, max_len: usize) -> String {
    grading_survey(n, max_len)
}

/// Tests the claim that `b = 1 − Θ₁ − Θ₂` annihilates every element.
pub fn zero_divisor() -> Result<String> {
    let b = Element::from_components2(Alphabet::Theta, [1, -1, -1, 0, 0].map(Scalar::int));
    let space = full_space2(Alphabet::Theta);
    let mut out = format!("# zero divisor claim, b = {b}\n");
    for a in basis_elements(Alphabet::Theta) {
        out.push_str(&format!("a = {a}: a b = {}, b a = {}\n", &a * &b, &b * &a));
    }
    let left = right_mul_map(&b, &space, &space)?.matrix().nullspace();
    let right = left_mul_map(&b, &space, &space)?.matrix().nullspace();
    let render = |vs: Vec<Vec<Scalar>>| -> Result<String> {
        let items = vs
            .iter()
            .map(|v| space.element(2, v).map(|e| e.to_string()))
            .collect::<Result<Vec<_>>>()?;
        Ok(format!("{{{}}}", items.join(", ")))
    };
    out.push_str(&format!(
        "elements a with a b = 0: span {}\n",
        render(left)?
    ));
    out.push_str(&format!(
        "elements a with b a = 0: span {}\n",
        render(right)?
    ));
    let generic = Element::from_components2(Alphabet::Theta, [1, 2, 3, 5, 7].map(Scalar::int));
    let holds = (&generic * &b).is_zero() && (&b * &generic).is_zero();
    out.push_str(&format!(
        "claim \"b annihilates every element\": {}\n",
        holds
    ));
    Ok(out)
}

pub fn almost_bialgebra() -> Result<String> {
    let mut out = String::from("# almost-bialgebra relations, D(Ti) = Ti (x) e + e (x) Ti\n");
    out.push_str("e_X1 | e_X2 | signs  | relation                  | holds\n");
    for row in almost_bialgebra_table()? {
        let e1 = row.e1.label(1);
        let e2 = row.e2.label(2);
        out.push_str(&format!(
            "{e1:<4} | {e2:<4} | {:<6} | {:<25} | {}\n",
            row.signs.to_string(),
            row.relation,
            row.holds
        ));
    }
    Ok(out)
}

pub fn comultiplication() -> Result<String> {
    let mut out = String::from("# dual comultiplication on the X basis\n");
    for flip in [false, true] {
        let table = dual_comultiplication(2, flip);
        out.push_str(&format!("pairing of tensors flipped: {flip}\n"));
        for (w, d) in &table {
            out.push_str(&format!("D({}) = {}\n", w.render('X'), d));
        }
        out.push_str(&format!(
            "dual pairing identity: {}\n",
            check_dual3(&table, flip)?
        ));
        let coassoc = coassociativity_failures(&table);
        out.push_str(&format!(
            "coassociative: {} (failing words: {})\n",
            coassoc.is_empty(),
            coassoc.len()
        ));
        let regco = regular_coalgebra_failures(&table)?;
        let words: Vec<String> = regco.iter().map(|w| w.render('X')).collect();
        out.push_str(&format!(
            "D e = (e (x) e) D: {} (failing words: [{}])\n",
            regco.is_empty(),
            words.join(", ")
        ));
    }
    Ok(out)
}

pub fn coherence(vacuum: Vacuum, max_deg: usize) -> Result<String> {
    let name = match vacuum {
        Vacuum::Unit => "vacuum 1 (x) 1",
        Vacuum::Idempotent => "vacuum E (x) 1",
    };
    let psi = CrossSymmetry::regular(vacuum);
    let mut out = format!("# cross symmetry coherence, base values with {name}\n");
    for d in 2..=max_deg {
        out.push_str(&psi.check_coherence(d)?.to_table());
    }
    Ok(out)
}

pub fn regular_wick() -> Result<String> {
    let psi = CrossSymmetry::regular(Vacuum::Unit);
    let e_ad = conjugate_map(obstruction_e2);
    let x = WickElement::basis(2, Word::generator(1), Word::unit());
    let y = WickElement::basis(2, Word::unit(), Word::generator(1));
    let v = wick_mul_regular(&x, &y, &psi, &obstruction_e2, &e_ad)?;
    let mut out = String::from("# regular Wick structure with e = obstruction\n");
    out.push_str(&format!("(T1 (x) 1) (1 (x) X1) = {v}\n"));
    let verdict = check_regular_cross_symmetry(&psi, &obstruction_e2, &e_ad, 2)?;
    for (xi, theta) in &verdict.witnesses {
        out.push_str(&format!(
            "intertwining fails at {} (x) {}\n",
            xi.render('X'),
            theta.render('T')
        ));
    }
    out.push_str(&format!("regular cross symmetry: {}\n", verdict.holds));
    Ok(out)
}

pub fn module() -> Result<String> {
    let action = multiplication_action2();
    let e = AffineMap::obstruction_e2();
    let v = check_regular_module(&action, &e, &e)?;
    let mut out = String::from("# A acting on itself, e_A = e_M = obstruction\n");
    let basis = basis_elements(Alphabet::Theta);
    for (i, j) in &v.failures {
        out.push_str(&format!("fails at a = {}, m = {}\n", basis[*i], basis[*j]));
    }
    out.push_str(&format!("regular module: {}\n", v.holds));
    Ok(out)
}

/// Compares the two assignments of cross terms in the obstructed product
/// on every pair of basis elements.
pub fn obstructed_product_assignments() -> Result<String> {
    let basis = basis_elements(Alphabet::Theta);
    let mut out = String::from("# e(a) e(b) = e(a * b) on basis pairs\n");
    let mut ok = 0;
    let mut swapped_ok = 0;
    for a in &basis {
        for b in &basis {
            let lhs = &obstruction_e2(a)? * &obstruction_e2(b)?;
            if lhs == obstruction_e2(&obstructed_product(a, b)?)? {
                ok += 1;
            }
            if lhs == obstruction_e2(&obstructed_product_swapped(a, b)?)? {
                swapped_ok += 1;
            } else {
                out.push_str(&format!("swapped cross terms fail at a = {a}, b = {b}\n"));
            }
        }
    }
    out.push_str(&format!("c1 with a1 b21 + a12 b1: {ok}/25\n"));
    out.push_str(&format!("c1 with a2 b12 + a21 b2: {swapped_ok}/25\n"));
    Ok(out)
}

pub fn cocycle_ca(n: usize, max_deg: usize) -> Result<String> {
    let built = build_ca(n, max_deg)?;
    Ok(format!(
        "# C_A cocycle, n = {n}, max degree {max_deg}\n{}",
        built.to_table()
    ))
}

/// Every snapshot as `(file name, contents)`.
pub fn all() -> Result<Vec<(&'static str, String)>> {
    Ok(vec![
        ("confluence_n3.txt", confluence(3)),
        ("representation_n3.txt", representation(3, 4)),
        ("zero_divisor.txt", zero_divisor()?),
        ("almost_bialgebra.txt", almost_bialgebra()?),
        ("comultiplication.txt", comultiplication()?),
        ("psi_coherence.txt", coherence(Vacuum::Unit, 3)?),
        (
            "psi_coherence_idempotent.txt",
            coherence(Vacuum::Idempotent, 3)?,
        ),
        ("grading_n3.txt", grading(3, 4)),
        ("regular_wick.txt", regular_wick()?),
        ("regular_module.txt", module()?),
        ("obstructed_product.txt", obstructed_product_assignments()?),
        ("cocycle_ca3.txt", cocycle_ca(3, 4)?),
    ])
}
