//! The acceptance suite: one line per criterion, non-zero exit if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rga_cli::parse::parse_element_in;
use rga_core::category::{
    build_ca, check_obstructed_functor, check_regular_cocycle, dual_cocycle,
    duality_identity_holds, obstructions, BaseChange, Cocycle,
};
use rga_core::rga2::{
    basis_elements, find_idempotent_obstructions, invert, invert_by_solve, mul_closed_form_2,
    obstructed_product, obstruction_e2,
};
use rga_core::wick::{dagger, wick_mul, CrossSymmetry, Vacuum, WickElement};
use rga_core::{reports, Alphabet, Element, LinearMap, Matrix, RewriteSystem, Scalar, Word};

const T: Alphabet = Alphabet::Theta;
const SAMPLES: usize = 1000;

type Criterion = (&'static str, fn() -> Check);

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + stream)
}

fn random_scalar(r: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_ratios(
        (r.gen_range(-9..=9), r.gen_range(1..=5)),
        (r.gen_range(-9..=9), r.gen_range(1..=5)),
    )
}

fn random_element2(r: &mut ChaCha8Rng) -> Element {
    Element::from_components2(T, std::array::from_fn(|_| random_scalar(r)))
}

fn random_element(r: &mut ChaCha8Rng, n: usize, words: &[Word]) -> Element {
    let k = r.gen_range(0..=6);
    Element::from_terms(
        n,
        T,
        (0..k).map(|_| (words[r.gen_range(0..words.len())].clone(), random_scalar(r))),
    )
    .expect("normal words")
}

fn theta(w: &[usize]) -> Element {
    Element::word(2, T, &Word::from(w)).expect("valid word")
}

fn snapshot_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/snapshots")
}

/// The named reports exist on disk, match a fresh run, and two runs agree.
fn snapshots_stable(names: &[&str]) -> Check {
    let first = reports::all().map_err(|e| e.to_string())?;
    let second = reports::all().map_err(|e| e.to_string())?;
    ensure(first == second, || "two report runs differ".into())?;
    for name in names {
        let (_, text) = first
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| format!("no report named {name}"))?;
        let stored = std::fs::read_to_string(snapshot_dir().join(name))
            .map_err(|e| format!("snapshot {name}: {e}"))?;
        ensure(&stored == text, || format!("snapshot {name} differs"))?;
    }
    Ok(())
}

fn regularity_and_idempotents() -> Check {
    let (t1, t2) = (theta(&[1]), theta(&[2]));
    let (e12, e21) = (theta(&[1, 2]), theta(&[2, 1]));
    let cases = [
        ("T1 T2 T1 = T1", &(&t1 * &t2) * &t1 == t1),
        ("T2 T1 T2 = T2", &(&t2 * &t1) * &t2 == t2),
        ("E12^2 = E12", &e12 * &e12 == e12),
        ("E21^2 = E21", &e21 * &e21 == e21),
        ("E12 E21 = 0", (&e12 * &e21).is_zero()),
        ("E21 E12 = 0", (&e21 * &e12).is_zero()),
        ("E12 T1 = T1", &e12 * &t1 == t1),
        ("T1 E21 = T1", &t1 * &e21 == t1),
        ("E21 T2 = T2", &e21 * &t2 == t2),
        ("T2 E12 = T2", &t2 * &e12 == t2),
    ];
    for (name, holds) in cases {
        ensure(holds, || format!("{name} fails"))?;
    }
    Ok(())
}

fn multiplication_oracle() -> Check {
    let basis = basis_elements(T);
    for a in &basis {
        for b in &basis {
            let closed = mul_closed_form_2(a, b).map_err(|e| e.to_string())?;
            ensure(a * b == closed, || format!("basis pair {a}, {b}"))?;
        }
    }
    let mut r = rng(2);
    for _ in 0..SAMPLES {
        let (a, b) = (random_element2(&mut r), random_element2(&mut r));
        let closed = mul_closed_form_2(&a, &b).map_err(|e| e.to_string())?;
        ensure(&a * &b == closed, || format!("random pair {a}, {b}"))?;
    }
    for a in &basis {
        for b in &basis {
            for c in &basis {
                ensure(&(a * b) * c == a * &(b * c), || {
                    format!("triple {a}, {b}, {c}")
                })?;
            }
        }
    }
    Ok(())
}

fn inverses() -> Check {
    let one = Element::one(2, T);
    let mut r = rng(3);
    let mut tested = 0;
    while tested < SAMPLES {
        let a = random_element2(&mut r);
        let Ok(inv) = invert(&a) else { continue };
        tested += 1;
        ensure(&a * &inv == one && &inv * &a == one, || {
            format!("{a} * {inv} != 1")
        })?;
        let solved = invert_by_solve(&a).map_err(|e| e.to_string())?;
        ensure(solved == inv, || {
            format!("closed form and solve differ at {a}")
        })?;
    }
    Ok(())
}

fn idempotent_obstructions() -> Check {
    let w = Scalar::omega();
    let expected = Element::from_components2(
        T,
        [
            Scalar::one(),
            Scalar::one(),
            Scalar::one(),
            w.clone(),
            w.pow(2),
        ],
    );
    let conjugate = expected.map_coefficients(Scalar::conj);
    let mut want = vec![expected, conjugate];
    want.sort_by_key(|e| e.to_string());
    let mut found = find_idempotent_obstructions();
    found.sort_by_key(|e| e.to_string());
    ensure(found == want, || format!("found {found:?}"))?;
    for e in &found {
        ensure(&(e * e) == e, || format!("{e} is not idempotent"))?;
    }
    Ok(())
}

fn obstruction_intertwining() -> Check {
    let mut r = rng(5);
    for _ in 0..SAMPLES {
        let (a, b) = (random_element2(&mut r), random_element2(&mut r));
        let e = |x: &Element| obstruction_e2(x).map_err(|e| e.to_string());
        let star = obstructed_product(&a, &b).map_err(|e| e.to_string())?;
        ensure(&e(&a)? * &e(&b)? == e(&star)?, || format!("pair {a}, {b}"))?;
    }
    Ok(())
}

fn rewrite_engine() -> Check {
    let sys = RewriteSystem::new(2);
    for len in 2..=12 {
        let k = sys.enumerate_normal_forms(len).len();
        ensure(k == 5, || format!("{k} normal words up to length {len}"))?;
    }
    ensure(sys.check_local_confluence().locally_confluent, || {
        "n = 2 is not locally confluent".into()
    })?;
    snapshots_stable(&["confluence_n3.txt", "representation_n3.txt"])
}

fn random_invertible(r: &mut ChaCha8Rng, d: usize) -> Matrix {
    let mut l = Matrix::identity(d);
    let mut u = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            if i > j {
                l.set(i, j, random_scalar(r));
            } else if i < j {
                u.set(i, j, random_scalar(r));
            } else {
                u.set(i, i, Scalar::int(r.gen_range(1..=4)));
            }
        }
    }
    &l * &u
}

fn partial_identity(rows: usize, cols: usize, rank: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rank {
        m.set(i, i, Scalar::one());
    }
    m
}

/// `ψᵢ = Uᵢ₊₁ Jᵢ Uᵢ⁻¹` with partial identities `Jᵢ` of a common rank.
fn random_regular_cocycle(r: &mut ChaCha8Rng, n: usize) -> Cocycle {
    let dims: Vec<usize> = (0..n).map(|_| r.gen_range(1..=4)).collect();
    let rank = r.gen_range(0..=*dims.iter().min().expect("n > 0"));
    let spaces: Vec<_> = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| rga_core::Subspace::coordinate(format!("X{}", i + 1), d))
        .collect();
    let us: Vec<Matrix> = dims.iter().map(|&d| random_invertible(r, d)).collect();
    let maps = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let inv = us[i].inverse().expect("invertible");
            let m = &(&us[j] * &partial_identity(dims[j], dims[i], rank)) * &inv;
            LinearMap::new(spaces[i].clone(), spaces[j].clone(), m).expect("shapes")
        })
        .collect();
    Cocycle::new(maps).expect("closed chain")
}

fn corpus() -> Result<Vec<Cocycle>, String> {
    let mut out = vec![
        build_ca(2, 2).map_err(|e| e.to_string())?.cocycle,
        build_ca(3, 4).map_err(|e| e.to_string())?.cocycle,
    ];
    let mut r = rng(7);
    for k in 0..40 {
        out.push(random_regular_cocycle(&mut r, 1 + k % 4));
    }
    Ok(out)
}

fn cocycle_suite() -> Check {
    let built = build_ca(2, 2).map_err(|e| e.to_string())?;
    let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
    ensure(
        built.cocycle.maps().iter().all(|m| m.matrix() == &swap),
        || "C_A(2) maps are not swaps".into(),
    )?;
    ensure(check_regular_cocycle(&built.cocycle).holds, || {
        "C_A(2) is not regular".into()
    })?;
    let mut r = rng(77);
    for c in corpus()? {
        if !check_regular_cocycle(&c).holds {
            continue;
        }
        for e in obstructions(&c).map_err(|e| e.to_string())? {
            ensure(e.matrix().is_idempotent(), || {
                format!("obstruction at {} is not idempotent", e.at().label())
            })?;
        }
        let pairings: Vec<Matrix> = c
            .spaces()
            .iter()
            .map(|s| random_invertible(&mut r, s.dim()))
            .collect();
        let dual = dual_cocycle(&c, &pairings).map_err(|e| e.to_string())?;
        ensure(duality_identity_holds(&c, &dual, &pairings), || {
            "duality identity fails".into()
        })?;
    }
    Ok(())
}

fn functor_lemma() -> Check {
    let mut r = rng(8);
    for c in corpus()? {
        let mut f = BaseChange::new();
        for s in c.spaces() {
            f = f
                .with(s.label(), random_invertible(&mut r, s.dim()))
                .map_err(|e| e.to_string())?;
        }
        let report =
            check_obstructed_functor(&f, std::slice::from_ref(&c)).map_err(|e| e.to_string())?;
        ensure(report.holds(), || format!("{report:?}"))?;
        for image in &report.images {
            ensure(check_regular_cocycle(image).holds, || {
                "image is not regular".into()
            })?;
        }
    }
    Ok(())
}

fn random_wick(r: &mut ChaCha8Rng, words: &[Word], budget: usize) -> WickElement {
    let k = r.gen_range(1..=3);
    let terms: Vec<_> = (0..k)
        .map(|_| {
            (
                words[r.gen_range(0..words.len())].clone(),
                words[r.gen_range(0..words.len())].clone(),
                random_scalar(r),
            )
        })
        .filter(|(a, b, _)| a.len() + b.len() <= budget)
        .collect();
    WickElement::from_terms(2, terms).expect("normal words")
}

fn degree(x: &WickElement) -> usize {
    x.terms()
        .map(|(a, b, _)| a.len() + b.len())
        .max()
        .unwrap_or(0)
}

fn wick_suite() -> Check {
    let psi = CrossSymmetry::regular(Vacuum::Unit);
    let p2 = psi
        .psi(&Word::from([1]), &Word::from([1, 2]))
        .map_err(|e| e.to_string())?;
    ensure(p2.to_string() == "T2 (x) 1 - T1 T2 (x) X1", || {
        format!("Psi(X1 (x) T1 T2) = {p2}")
    })?;

    let mut r = rng(9);
    let words = RewriteSystem::new(2).enumerate_normal_forms(2);
    for _ in 0..SAMPLES {
        let (a, b) = (random_element2(&mut r), random_element2(&mut r));
        ensure(dagger(&dagger(&a)) == a, || {
            format!("dagger twice moves {a}")
        })?;
        ensure(dagger(&(&a * &b)) == &dagger(&b) * &dagger(&a), || {
            format!("dagger is not anti-multiplicative at {a}, {b}")
        })?;
    }
    let words3 = RewriteSystem::new(3).enumerate_normal_forms(4);
    for _ in 0..SAMPLES / 4 {
        let a = random_element(&mut r, 3, &words3);
        let b = random_element(&mut r, 3, &words3);
        ensure(dagger(&(&a * &b)) == &dagger(&b) * &dagger(&a), || {
            format!("dagger is not anti-multiplicative at {a}, {b} (n = 3)")
        })?;
    }

    // associativity wherever the coherence report at degree 4 allows the products
    for psi in [CrossSymmetry::flip(), psi] {
        let coherent = psi.incoherence_at(4).map_err(|e| e.to_string())?.is_none();
        let mut tested = 0;
        for _ in 0..200 {
            let x = random_wick(&mut r, &words, 2);
            let y = random_wick(&mut r, &words, 2);
            let z = random_wick(&mut r, &words, 2);
            if degree(&x) + degree(&y) + degree(&z) > 4 {
                continue;
            }
            let left = wick_mul(&x, &y, &psi).and_then(|xy| wick_mul(&xy, &z, &psi));
            let right = wick_mul(&y, &z, &psi).and_then(|yz| wick_mul(&x, &yz, &psi));
            match (left, right) {
                (Ok(l), Ok(rt)) => {
                    tested += 1;
                    ensure(l == rt, || format!("({x})({y})({z}) is not associative"))?;
                }
                _ => ensure(!coherent, || "a coherent cross symmetry refused".into())?,
            }
        }
        ensure(tested > 0, || "no triple could be evaluated".into())?;
    }
    Ok(())
}

fn discrepancy_snapshots() -> Check {
    snapshots_stable(&[
        "zero_divisor.txt",
        "almost_bialgebra.txt",
        "psi_coherence.txt",
        "grading_n3.txt",
    ])?;
    let table = reports::almost_bialgebra().map_err(|e| e.to_string())?;
    let rows = table.lines().skip(2).count();
    ensure(rows == 4 * 2 * 4, || format!("{rows} relation rows"))
}

fn cli() -> Check {
    let mut r = rng(11);
    for k in 0..SAMPLES {
        let n = 2 + k % 2;
        let alphabet = if k % 3 == 0 { Alphabet::Xi } else { T };
        let words = RewriteSystem::new(n).enumerate_normal_forms(4);
        let e = random_element(&mut r, n, &words).with_alphabet(alphabet);
        let back = parse_element_in(&e.to_string(), n, alphabet).map_err(|err| err.to_string())?;
        ensure(back == e, || format!("{e} does not round-trip"))?;
    }
    let run = |args: &[&str]| -> Result<(i32, String), String> {
        let out = Command::new(env!("CARGO_BIN_EXE_rga"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        Ok((
            out.status.code().unwrap_or(-1),
            String::from_utf8_lossy(&out.stdout).into_owned(),
        ))
    };
    let confluence = run(&["confluence", "-n", "2"])?;
    let k = RewriteSystem::new(2)
        .check_local_confluence()
        .critical_pairs
        .len();
    let expectations = [
        (
            run(&["eval", "-n", "2", "T1 T2 T1"])?,
            (0, "T1\n".to_string()),
        ),
        (
            run(&["invert", "-n", "2", "T1"])?,
            (1, "error: not invertible (a0 = 0)\n".to_string()),
        ),
        (
            confluence,
            (
                0,
                format!("locally confluent: true (critical pairs: {k}, all joinable)\n"),
            ),
        ),
    ];
    for (got, want) in expectations {
        ensure(got == want, || format!("got {got:?}, want {want:?}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (
            "regularity and idempotent identities",
            regularity_and_idempotents,
        ),
        ("multiplication oracle", multiplication_oracle),
        ("inverse", inverses),
        ("idempotent obstructions", idempotent_obstructions),
        ("obstruction intertwining", obstruction_intertwining),
        ("rewrite engine", rewrite_engine),
        ("cocycle suite", cocycle_suite),
        ("functor lemma", functor_lemma),
        ("wick suite", wick_suite),
        ("documented-discrepancy snapshots", discrepancy_snapshots),
        ("cli", cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2} {name}: PASS", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
