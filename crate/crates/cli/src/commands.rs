use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rga_core::bialgebra::{candidate_delta, check_almost_bialgebra, check_regular_module};
use rga_core::bialgebra::{EVacuum, SignConvention};
use rga_core::category::{
    check_obstructed_functor, check_regular_cocycle, dual_cocycle, duality_identity_holds,
    is_obstructed, obstructions,
};
use rga_core::repr::decompose;
use rga_core::rga2::{annihilator, find_idempotent_obstructions, invert, obstruction_e2, Side};
use rga_core::wick::{CrossSymmetry, Vacuum};
use rga_core::{reports, RewriteSystem};

use crate::doc::{CocycleDoc, FunctorDoc, ModuleDoc};
use crate::parse::{parse_element, parse_letters, parse_wick};

#[derive(Parser, Debug)]
#[command(
    name = "rga",
    about = "Exact computations in regular Grassmann-type algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression to normal form
    Eval {
        #[arg(short, default_value_t = 2)]
        n: usize,
        expr: String,
    },
    /// Normal form of a word, given as letters (`1 2 1`) or generators (`T1 T2 T1`)
    Nf {
        #[arg(short, default_value_t = 2)]
        n: usize,
        word: String,
    },
    /// Closed-form inverse (n = 2)
    Invert {
        #[arg(short, default_value_t = 2)]
        n: usize,
        expr: String,
    },
    /// Basis of a one-sided annihilator (n = 2)
    Annihilate {
        #[arg(short, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum)]
        side: SideArg,
        expr: String,
    },
    /// The obstruction e(a) (n = 2)
    Obstruction {
        #[arg(short, default_value_t = 2)]
        n: usize,
        expr: String,
    },
    /// Idempotent obstruction elements (n = 2)
    Idempotents {
        #[arg(short, default_value_t = 2)]
        n: usize,
    },
    /// Local confluence of the rewriting rules
    Confluence {
        #[arg(short)]
        n: usize,
        /// Print every critical pair
        #[arg(long)]
        table: bool,
    },
    /// The spaces X_i of words beginning with each generator
    Decompose {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        max_deg: usize,
    },
    /// Checkers over JSON documents and the bialgebra candidates
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Wick products and cross symmetry coherence
    Wick {
        #[command(subcommand)]
        what: WickCommand,
    },
    /// Comultiplication dual to the product
    Dual {
        #[command(subcommand)]
        what: DualCommand,
    },
    /// Write the snapshot reports
    Report {
        /// Write every report
        #[arg(long, conflicts_with = "names")]
        all: bool,
        /// Print the named reports (e.g. zero_divisor.txt) instead of writing files
        names: Vec<String>,
        #[arg(long, default_value = "reports")]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Regularity, obstructions and duality of a cocycle document
    Cocycle { file: PathBuf },
    /// Whether a functor document preserves regular cocycles and obstructions
    Functor { file: PathBuf },
    /// The almost-bialgebra relations for one interpretation of the comultiplication
    Bialgebra {
        #[arg(short, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SignsArg::Plain)]
        signs: SignsArg,
        #[arg(long, value_enum, default_value_t = EVacuumArg::Unit)]
        evacuum: EVacuumArg,
    },
    /// The regular-module condition for a module document
    Module { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum WickCommand {
    Eval {
        expr: String,
        #[arg(long, value_enum, default_value_t = VacuumArg::Unit)]
        vacuum: VacuumArg,
        #[arg(long, value_enum, default_value_t = BaseArg::Regular)]
        base: BaseArg,
    },
    Coherence {
        #[arg(long)]
        max_deg: usize,
        #[arg(long, value_enum, default_value_t = VacuumArg::Unit)]
        vacuum: VacuumArg,
        #[arg(long, value_enum, default_value_t = BaseArg::Regular)]
        base: BaseArg,
    },
}

#[derive(Subcommand, Debug)]
enum DualCommand {
    Delta,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignsArg {
    Plain,
    Koszul,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EVacuumArg {
    Unit,
    Idem,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VacuumArg {
    Unit,
    Idem,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BaseArg {
    Regular,
    Flip,
}

/// Outcome of one invocation: exit code and the text for stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout }
    }

    fn verdict(holds: bool, stdout: String) -> Self {
        Outcome {
            code: if holds { 0 } else { 1 },
            stdout,
        }
    }

    fn failure(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 1,
            stdout: format!("error: {msg}\n"),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: format!("error: {msg}\n"),
        }
    }
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv =
        std::iter::once(std::ffi::OsString::from("rga")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return Outcome {
                code,
                stdout: e.render().to_string(),
            };
        }
    };
    match cli.command {
        Command::Eval { n, expr } => match parse_element(&expr, n) {
            Ok(e) => Outcome::ok(format!("{e}\n")),
            Err(e) => Outcome::usage(e),
        },
        Command::Nf { n, word } => nf(n, &word),
        Command::Invert { n, expr } => {
            on_element(n, &expr, |a| invert(a).map(|b| format!("{b}\n")))
        }
        Command::Annihilate { n, side, expr } => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            on_element(n, &expr, |a| {
                let basis = annihilator(a, side)?;
                let items: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
                Ok(format!("span {{{}}}\n", items.join(", ")))
            })
        }
        Command::Obstruction { n, expr } => {
            on_element(n, &expr, |a| obstruction_e2(a).map(|e| format!("{e}\n")))
        }
        Command::Idempotents { n } => {
            if n != 2 {
                return Outcome::failure(rga_core::Error::NeedsTwoGenerators(n));
            }
            let mut out = String::new();
            for e in find_idempotent_obstructions() {
                let _ = writeln!(out, "{e}");
            }
            Outcome::ok(out)
        }
        Command::Confluence { n, table } => confluence(n, table),
        Command::Decompose { n, max_deg } => {
            let mut out = String::new();
            for s in decompose(n, max_deg) {
                let _ = writeln!(out, "{s}");
            }
            Outcome::ok(out)
        }
        Command::Check { what } => match what {
            CheckCommand::Cocycle { file } => check_cocycle(&file),
            CheckCommand::Functor { file } => check_functor(&file),
            CheckCommand::Bialgebra { n, signs, evacuum } => check_bialgebra(n, signs, evacuum),
            CheckCommand::Module { file } => check_module(&file),
        },
        Command::Wick { what } => match what {
            WickCommand::Eval { expr, vacuum, base } => {
                let psi = cross_symmetry(vacuum, base);
                match parse_wick(&expr, 2, &psi) {
                    Ok(v) => Outcome::ok(format!("{v}\n")),
                    Err(crate::parse::ParseError::Eval(e)) => Outcome::failure(e),
                    Err(e) => Outcome::usage(e),
                }
            }
            WickCommand::Coherence {
                max_deg,
                vacuum,
                base,
            } => match cross_symmetry(vacuum, base).check_coherence(max_deg) {
                Ok(r) => Outcome::verdict(r.holds(), r.to_table()),
                Err(e) => Outcome::failure(e),
            },
        },
        Command::Dual {
            what: DualCommand::Delta,
        } => match reports::comultiplication() {
            Ok(s) => Outcome::ok(s),
            Err(e) => Outcome::failure(e),
        },
        Command::Report { all, names, out } => report(all, &names, &out),
    }
}

fn on_element(
    n: usize,
    expr: &str,
    f: impl FnOnce(&rga_core::Element) -> rga_core::Result<String>,
) -> Outcome {
    let a = match parse_element(expr, n) {
        Ok(a) => a,
        Err(e) => return Outcome::usage(e),
    };
    match f(&a) {
        Ok(s) => Outcome::ok(s),
        Err(e) => Outcome::failure(e),
    }
}

fn nf(n: usize, text: &str) -> Outcome {
    let w = match parse_letters(text) {
        Ok(w) => w,
        Err(e) => return Outcome::usage(e),
    };
    match RewriteSystem::new(n).normal_form(&w) {
        Ok(Some(w)) => Outcome::ok(format!("{}\n", w.render('T'))),
        Ok(None) => Outcome::ok("0\n".to_string()),
        Err(e) => Outcome::usage(e),
    }
}

fn confluence(n: usize, table: bool) -> Outcome {
    let report = RewriteSystem::new(n).check_local_confluence();
    let mut out = String::new();
    if table {
        out.push_str(&report.to_table());
        return Outcome::verdict(report.locally_confluent, out);
    }
    let total = report.critical_pairs.len();
    let bad = report.unjoinable().count();
    for c in report.unjoinable() {
        let _ = writeln!(
            out,
            "not joinable: {} ({}, {})",
            c.overlap.render('T'),
            c.rules.0,
            c.rules.1
        );
    }
    if bad == 0 {
        let _ = writeln!(
            out,
            "locally confluent: true (critical pairs: {total}, all joinable)"
        );
    } else {
        let _ = writeln!(
            out,
            "locally confluent: false (critical pairs: {total}, not joinable: {bad})"
        );
    }
    Outcome::verdict(report.locally_confluent, out)
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path)
        .map_err(|e| Outcome::usage(format!("cannot read {}: {e}", path.display())))
}

fn check_cocycle(path: &Path) -> Outcome {
    let input = match read(path).and_then(|text| {
        CocycleDoc::from_json(&text)
            .and_then(|d| d.load())
            .map_err(Outcome::usage)
    }) {
        Ok(i) => i,
        Err(o) => return o,
    };
    let c = &input.cocycle;
    let verdict = check_regular_cocycle(c);
    let mut out = String::new();
    if let Some(k) = verdict.first_failure {
        let _ = writeln!(out, "regular cocycle: false (first failure at psi{k})");
        return Outcome::verdict(false, out);
    }
    out.push_str("regular cocycle: true\n");
    let es = match obstructions(c) {
        Ok(es) => es,
        Err(e) => return Outcome::failure(e),
    };
    for e in &es {
        let _ = writeln!(
            out,
            "e_{} = {} (idempotent: {}, identity: {})",
            e.at().label(),
            e.matrix(),
            e.matrix().is_idempotent(),
            e.is_identity()
        );
    }
    match is_obstructed(std::slice::from_ref(c)) {
        Ok(Some(n)) => {
            let _ = writeln!(out, "obstructed: n = {n}");
        }
        Ok(None) => out.push_str("obstructed: no\n"),
        Err(e) => return Outcome::failure(e),
    }
    let mut holds = true;
    if let Some(pairings) = &input.pairings {
        let dual = match dual_cocycle(c, pairings) {
            Ok(d) => d,
            Err(e) => return Outcome::failure(e),
        };
        for (i, m) in dual.maps().iter().enumerate() {
            let _ = writeln!(out, "dual psi{} {m}", i + 1);
        }
        let dual_regular = check_regular_cocycle(&dual).holds;
        let identity = duality_identity_holds(c, &dual, pairings);
        let _ = writeln!(out, "dual regular cocycle: {dual_regular}");
        let _ = writeln!(out, "duality identity: {identity}");
        holds = dual_regular && identity;
    }
    Outcome::verdict(holds, out)
}

fn check_functor(path: &Path) -> Outcome {
    let input = match read(path).and_then(|text| {
        FunctorDoc::from_json(&text)
            .and_then(|d| d.load())
            .map_err(Outcome::usage)
    }) {
        Ok(i) => i,
        Err(o) => return o,
    };
    let report = match check_obstructed_functor(input.functor.as_ref(), &input.cocycles) {
        Ok(r) => r,
        Err(e) => return Outcome::failure(e),
    };
    let mut out = String::new();
    for (k, image) in report.images.iter().enumerate() {
        for (i, m) in image.maps().iter().enumerate() {
            let _ = writeln!(out, "image {} psi{} {m}", k + 1, i + 1);
        }
    }
    let _ = writeln!(
        out,
        "obstructions preserved: {}",
        report.obstruction_preserved
    );
    let _ = writeln!(out, "images regular: {}", report.image_regular);
    let _ = writeln!(out, "F(psi) F(e) = F(psi): {}", report.lemma_identity);
    let _ = writeln!(out, "obstructed functor: {}", report.holds());
    Outcome::verdict(report.holds(), out)
}

fn check_bialgebra(n: usize, signs: SignsArg, evacuum: EVacuumArg) -> Outcome {
    if n != 2 {
        return Outcome::failure(rga_core::Error::NeedsTwoGenerators(n));
    }
    let signs = match signs {
        SignsArg::Plain => SignConvention::Plain,
        SignsArg::Koszul => SignConvention::Koszul,
    };
    let e = match evacuum {
        EVacuumArg::Unit => EVacuum::Unit,
        EVacuumArg::Idem => EVacuum::Idempotent,
    };
    let rows = candidate_delta(1, &e.element(1), signs).and_then(|d1| {
        let d2 = candidate_delta(2, &e.element(2), signs)?;
        check_almost_bialgebra(&d1, &d2).map(|rows| (d1, d2, rows))
    });
    let (d1, d2, rows) = match rows {
        Ok(r) => r,
        Err(err) => return Outcome::failure(err),
    };
    let mut out = format!("D(T1) = {d1}\nD(T2) = {d2}\nsigns: {signs}\n");
    for (relation, holds) in &rows {
        let _ = writeln!(out, "{relation}: {holds}");
    }
    let all = rows.iter().all(|(_, h)| *h);
    let _ = writeln!(out, "almost bialgebra: {all}");
    Outcome::verdict(all, out)
}

fn check_module(path: &Path) -> Outcome {
    let input = match read(path).and_then(|text| {
        ModuleDoc::from_json(&text)
            .and_then(|d| d.load())
            .map_err(Outcome::usage)
    }) {
        Ok(i) => i,
        Err(o) => return o,
    };
    match check_regular_module(&input.action, &input.e_a, &input.e_m) {
        Ok(v) => {
            let mut out = String::new();
            for (i, j) in &v.failures {
                let _ = writeln!(out, "fails at a = basis[{i}], m = basis[{j}]");
            }
            let _ = writeln!(out, "regular module: {}", v.holds);
            Outcome::verdict(v.holds, out)
        }
        Err(e) => Outcome::failure(e),
    }
}

fn cross_symmetry(vacuum: VacuumArg, base: BaseArg) -> CrossSymmetry {
    match (base, vacuum) {
        (BaseArg::Flip, _) => CrossSymmetry::flip(),
        (BaseArg::Regular, VacuumArg::Unit) => CrossSymmetry::regular(Vacuum::Unit),
        (BaseArg::Regular, VacuumArg::Idem) => CrossSymmetry::regular(Vacuum::Idempotent),
    }
}

fn report(all: bool, names: &[String], out_dir: &Path) -> Outcome {
    if !all && names.is_empty() {
        return Outcome::usage("report needs --all or report names");
    }
    let reports = match reports::all() {
        Ok(r) => r,
        Err(e) => return Outcome::failure(e),
    };
    if !all {
        let mut out = String::new();
        for name in names {
            match reports.iter().find(|(n, _)| n == name) {
                Some((_, text)) => out.push_str(text),
                None => return Outcome::usage(format!("unknown report {name:?}")),
            }
        }
        return Outcome::ok(out);
    }
    if let Err(e) = std::fs::create_dir_all(out_dir) {
        return Outcome::failure(format!("cannot create {}: {e}", out_dir.display()));
    }
    let mut out = String::new();
    for (name, text) in &reports {
        let path = out_dir.join(name);
        if let Err(e) = std::fs::write(&path, text) {
            return Outcome::failure(format!("cannot write {}: {e}", path.display()));
        }
        let _ = writeln!(out, "wrote {}", path.display());
    }
    Outcome::ok(out)
}
