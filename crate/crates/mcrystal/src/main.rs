//! Command-line surface for the crystal library: weight evaluation,
//! representation conversion, graph expansion, wall manipulation, and the
//! verification sweeps.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 parse error or refused
//! depth, 3 input outside the crystal, 4 unsupported type.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcrystal::cartan::{AffineType, CartanDatum, Family};
use mcrystal::delta::{a_table, wt_affine, wt_lambda, ATable};
use mcrystal::monomial::{apply_word, classical_weight, h_lambda, CrystalVariant, Monomial};
use mcrystal::oracle::{
    b4_coefficients, bfs_infinity, bfs_lambda, verify_axioms, verify_b4, verify_delta,
    verify_wall_iso, Report,
};
use mcrystal::youngwall::Wall;
use mcrystal::CrystalError;

const WORD_HELP: &str = "Comma-separated operator indices, applied in the order written: \
the first index acts first. Example: --word 0,1 applies f_0, then f_1.";

#[derive(Parser)]
#[command(
    name = "mcrystal",
    version,
    about = "Monomial crystals for affine types A and B: weights, delta coefficients, \
Young walls, and exhaustive verification",
    after_help = "Monomials are written as space-separated Y(i,k) factors with optional \
^exponent, e.g. \"Y(0,0)^-1 Y(1,1)^2\"; the bare symbol 1 is the identity."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a monomial's classical weight, delta coefficient D, and full affine weight
    Weight(WeightArgs),
    /// Convert a monomial to its a-table, or to a Young wall (type A only)
    Convert(ConvertArgs),
    /// Apply a word of lowering operators and print the result
    Apply(ApplyArgs),
    /// Expand a crystal ball to a given depth and emit it as DOT or JSON
    Expand(ExpandArgs),
    /// Inspect or transform a generalized Young wall
    Wall(WallArgs),
    /// Run verification sweeps; exits 0 only if every check passes
    Verify(VerifyArgs),
    /// Print the two coefficient sequences of the B4 closed-form row
    #[command(name = "b4seq")]
    B4Seq(B4Args),
}

#[derive(Args)]
struct WeightArgs {
    /// Affine type: A1, A2, ... or B3, B4, ...
    #[arg(long = "type")]
    ty: String,
    /// Monomial text, e.g. "Y(0,0)^-1 Y(1,1)^2"
    #[arg(long, conflicts_with = "word", required_unless_present = "word")]
    monomial: Option<String>,
    #[arg(long, help = WORD_HELP)]
    word: Option<String>,
    /// Highest-weight multiplicities p0,...,pn; selects the crystal of lambda
    #[arg(long)]
    lambda: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Target {
    #[value(name = "a-table")]
    ATable,
    #[value(name = "wall")]
    Wall,
}

#[derive(Args)]
struct ConvertArgs {
    /// Affine type: A1, A2, ... or B3, B4, ...
    #[arg(long = "type")]
    ty: String,
    /// Monomial text, e.g. "Y(0,0)^-1 Y(1,1)^2"
    #[arg(long, conflicts_with = "word", required_unless_present = "word")]
    monomial: Option<String>,
    #[arg(long, help = WORD_HELP)]
    word: Option<String>,
    /// Target representation
    #[arg(long, value_enum, default_value_t = Target::ATable)]
    to: Target,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// With --to wall: draw the wall instead of listing row lengths
    #[arg(long)]
    render: bool,
}

#[derive(Args)]
struct ApplyArgs {
    /// Affine type: A1, A2, ... or B3, B4, ...
    #[arg(long = "type")]
    ty: String,
    #[arg(long, help = WORD_HELP)]
    word: String,
    /// Starting monomial; defaults to 1, or to H_lambda when --lambda is given
    #[arg(long)]
    start: Option<String>,
    /// Highest-weight multiplicities p0,...,pn; selects the crystal of lambda
    #[arg(long)]
    lambda: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum VariantArg {
    Infinity,
    Lambda,
}

#[derive(Args)]
struct ExpandArgs {
    /// Affine type: A1, A2, ... or B3, B4, ...
    #[arg(long = "type")]
    ty: String,
    /// Ball radius around the starting element
    #[arg(long)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
    format: GraphFormat,
    #[arg(long, value_enum, default_value_t = VariantArg::Infinity)]
    variant: VariantArg,
    /// Highest-weight multiplicities p0,...,pn (required with --variant lambda)
    #[arg(long, required_if_eq("variant", "lambda"))]
    lambda: Option<String>,
    /// Run past the per-type depth cap
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct WallArgs {
    /// Number of colors minus one; boards have n + 1 colors
    #[arg(long)]
    n: usize,
    /// Comma-separated row lengths bottom-up; "0" is the empty wall
    #[arg(long)]
    rows: String,
    /// Delete removable delta columns until none remain
    #[arg(long, conflicts_with_all = ["remove", "apply"])]
    reduce: bool,
    /// Delete one delta whose boxes end in the named column
    #[arg(long, conflicts_with = "apply")]
    remove: Option<usize>,
    #[arg(long, help = WORD_HELP)]
    apply: Option<String>,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Draw the wall instead of listing row lengths
    #[arg(long)]
    render: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Suite {
    #[value(name = "a1")]
    A1,
    #[value(name = "an")]
    An,
    #[value(name = "b3")]
    B3,
    #[value(name = "bn")]
    Bn,
    #[value(name = "walls")]
    Walls,
    #[value(name = "b4seq")]
    B4Seq,
    #[value(name = "all")]
    All,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which sweep to run
    #[arg(long, value_enum)]
    suite: Suite,
    /// Restrict a suite to one affine type (for walls, an A-type naming the rank)
    #[arg(long = "type")]
    ty: Option<String>,
    /// Override the suite's default depth
    #[arg(long)]
    depth: Option<usize>,
    /// Run past the per-type depth cap
    #[arg(long)]
    force: bool,
    /// Emit the reports as a JSON array
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct B4Args {
    /// How many coefficient pairs to print
    #[arg(long, default_value_t = 21)]
    count: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Weight(a) => run_weight(a),
        Cmd::Convert(a) => run_convert(a),
        Cmd::Apply(a) => run_apply(a),
        Cmd::Expand(a) => run_expand(a),
        Cmd::Wall(a) => run_wall(a),
        Cmd::Verify(a) => run_verify(a),
        Cmd::B4Seq(a) => run_b4seq(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &CrystalError) -> u8 {
    match e {
        CrystalError::Mismatch(_) => 1,
        CrystalError::Parse(_) => 2,
        CrystalError::NotInCrystal(_)
        | CrystalError::InconsistentSystem(_)
        | CrystalError::InvalidOperation(_) => 3,
        CrystalError::UnsupportedType(_) => 4,
    }
}

fn datum(ty: &str) -> Result<CartanDatum, CrystalError> {
    Ok(CartanDatum::new(ty.parse::<AffineType>()?))
}

/// Largest depth a command accepts without --force; keeps full sweeps under
/// a minute of desk time.
fn depth_cap(d: &CartanDatum) -> usize {
    match (d.affine_type().family(), d.n()) {
        (Family::A, 1) => 10,
        (Family::A, n) if n <= 4 => 7,
        (Family::A, _) => 6,
        (Family::B, 3) => 6,
        (Family::B, 4) => 5,
        (Family::B, _) => 4,
    }
}

/// Wall sweeps branch like the rank-(n) monomial crystal; same spirit of cap.
fn wall_depth_cap(n: usize) -> usize {
    match n {
        1 | 2 => 6,
        3 => 5,
        _ => 4,
    }
}

fn check_depth(label: &str, depth: usize, cap: usize, force: bool) -> Result<(), CrystalError> {
    if depth > cap && !force {
        return Err(CrystalError::Parse(format!(
            "depth {} exceeds the {} cap of {}; pass --force to run anyway",
            depth, label, cap
        )));
    }
    Ok(())
}

fn parse_monomial(d: &CartanDatum, text: &str) -> Result<Monomial, CrystalError> {
    let m: Monomial = text.parse()?;
    for ((i, _), _) in m.iter() {
        if i > d.n() {
            return Err(CrystalError::Parse(format!(
                "row index {} is out of range for type {}",
                i,
                d.affine_type()
            )));
        }
    }
    Ok(m)
}

fn parse_word(d: &CartanDatum, text: &str) -> Result<Vec<usize>, CrystalError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            let i: usize = tok
                .trim()
                .parse()
                .map_err(|_| CrystalError::Parse(format!("bad operator index {:?}", tok)))?;
            if i > d.n() {
                return Err(CrystalError::Parse(format!(
                    "operator index {} is out of range for type {}",
                    i,
                    d.affine_type()
                )));
            }
            Ok(i)
        })
        .collect()
}

fn parse_lambda(d: &CartanDatum, text: &str) -> Result<Vec<i64>, CrystalError> {
    let parts = text
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| CrystalError::Parse(format!("bad multiplicity {:?}", tok)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if parts.len() != d.index_count() {
        return Err(CrystalError::Parse(format!(
            "lambda needs {} entries for type {}, got {}",
            d.index_count(),
            d.affine_type(),
            parts.len()
        )));
    }
    if parts.iter().any(|&p| p < 0) {
        return Err(CrystalError::Parse(
            "lambda multiplicities must be nonnegative".to_string(),
        ));
    }
    Ok(parts)
}

/// Resolve --monomial / --word to an element. `None` means a word walked off
/// the bottom of a highest-weight crystal.
fn resolve_element(
    d: &CartanDatum,
    monomial: Option<&str>,
    word: Option<&str>,
    lambda: Option<&[i64]>,
) -> Result<Option<Monomial>, CrystalError> {
    match (monomial, word) {
        (Some(text), None) => Ok(Some(parse_monomial(d, text)?)),
        (None, Some(text)) => {
            let w = parse_word(d, text)?;
            let (variant, start) = match lambda {
                Some(p) => (CrystalVariant::HighestWeight, h_lambda(p)),
                None => (CrystalVariant::ModifiedInfinity, Monomial::one()),
            };
            Ok(apply_word(d, variant, &start, &w))
        }
        _ => Err(CrystalError::Parse(
            "give exactly one of --monomial and --word".to_string(),
        )),
    }
}

fn run_weight(a: &WeightArgs) -> Result<bool, CrystalError> {
    let d = datum(&a.ty)?;
    let lambda = a
        .lambda
        .as_deref()
        .map(|s| parse_lambda(&d, s))
        .transpose()?;
    let m = match resolve_element(&d, a.monomial.as_deref(), a.word.as_deref(), lambda.as_deref())?
    {
        Some(m) => m,
        None => {
            println!("Null");
            return Ok(true);
        }
    };
    let w = match &lambda {
        Some(p) => wt_lambda(&d, &m, p)?,
        None => wt_affine(&d, &m)?,
    };
    println!("monomial: {}", m);
    println!("classical: {}", classical_weight(&d, &m));
    println!("D = {}", w.dcoef);
    println!("weight: {}", w);
    Ok(true)
}

fn run_convert(a: &ConvertArgs) -> Result<bool, CrystalError> {
    let d = datum(&a.ty)?;
    let m = match resolve_element(&d, a.monomial.as_deref(), a.word.as_deref(), None)? {
        Some(m) => m,
        None => unreachable!("infinity words are total"),
    };
    let t = a_table(&d, &m)?;
    match a.to {
        Target::ATable => {
            if a.json {
                println!("{}", t.to_json());
            } else {
                println!("{}", t);
            }
        }
        Target::Wall => {
            if d.affine_type().family() != Family::A {
                return Err(CrystalError::UnsupportedType(format!(
                    "walls exist only in type A, not {}",
                    d.affine_type()
                )));
            }
            if t.iter().any(|(_, v)| v > 0) {
                return Err(CrystalError::NotInCrystal(format!(
                    "the table of {} has positive entries; no wall matches it",
                    m
                )));
            }
            let counts = ATable::from_entries(t.iter().map(|((i, k), v)| ((i, k + 1), -v)));
            let wall = Wall::from_column_counts(d.n(), &counts)?;
            print_wall(&wall, a.json, a.render);
        }
    }
    Ok(true)
}

fn run_apply(a: &ApplyArgs) -> Result<bool, CrystalError> {
    let d = datum(&a.ty)?;
    let lambda = a
        .lambda
        .as_deref()
        .map(|s| parse_lambda(&d, s))
        .transpose()?;
    let word = parse_word(&d, &a.word)?;
    let (variant, default_start) = match &lambda {
        Some(p) => (CrystalVariant::HighestWeight, h_lambda(p)),
        None => (CrystalVariant::ModifiedInfinity, Monomial::one()),
    };
    let start = match a.start.as_deref() {
        Some(text) => parse_monomial(&d, text)?,
        None => default_start,
    };
    match apply_word(&d, variant, &start, &word) {
        Some(m) => println!("{}", m),
        None => println!("Null"),
    }
    Ok(true)
}

fn run_expand(a: &ExpandArgs) -> Result<bool, CrystalError> {
    let d = datum(&a.ty)?;
    check_depth(&a.ty, a.depth, depth_cap(&d), a.force)?;
    let g = match a.variant {
        VariantArg::Infinity => bfs_infinity(&d, a.depth)?,
        VariantArg::Lambda => {
            let p = parse_lambda(&d, a.lambda.as_deref().expect("clap requires --lambda"))?;
            bfs_lambda(&d, &p, a.depth)?
        }
    };
    match a.format {
        GraphFormat::Dot => println!("{}", g.to_dot()),
        GraphFormat::Json => println!("{}", g.to_json()),
    }
    Ok(true)
}

fn print_wall(w: &Wall, json: bool, render: bool) {
    if render {
        println!("{}", w.render());
    } else if json {
        println!("{}", w.to_json());
    } else {
        println!("{}", w);
    }
}

fn run_wall(a: &WallArgs) -> Result<bool, CrystalError> {
    if a.n == 0 {
        return Err(CrystalError::UnsupportedType(
            "walls need at least two colors (n >= 1)".to_string(),
        ));
    }
    let wall = Wall::parse(a.n, &a.rows)?;
    if let Some(word_text) = a.apply.as_deref() {
        if !wall.is_proper() {
            return Err(CrystalError::InvalidOperation(format!(
                "wall {} is not proper; operators act on proper walls",
                wall
            )));
        }
        let d = CartanDatum::new(AffineType::new(Family::A, a.n)?);
        let word = parse_word(&d, word_text)?;
        let result = word.iter().fold(wall, |w, &i| w.apply_f(i));
        print_wall(&result, a.json, a.render);
        return Ok(true);
    }
    if let Some(k) = a.remove {
        let result = wall.remove_delta(k)?;
        print_wall(&result, a.json, a.render);
        return Ok(true);
    }
    if a.reduce {
        if !wall.is_proper() {
            return Err(CrystalError::InvalidOperation(format!(
                "wall {} is not proper; reduction acts on proper walls",
                wall
            )));
        }
        print_wall(&wall.reduce(), a.json, a.render);
        return Ok(true);
    }
    let d = CartanDatum::new(AffineType::new(Family::A, a.n)?);
    if a.render {
        println!("{}", wall.render());
    }
    if a.json {
        let mut v = wall.to_json();
        let obj = v.as_object_mut().expect("wall json is an object");
        obj.insert("proper".to_string(), wall.is_proper().into());
        if wall.is_proper() {
            obj.insert("reduced".to_string(), wall.is_reduced().into());
            obj.insert(
                "weight".to_string(),
                serde_json::to_value(wall.weight(&d)).expect("serializable"),
            );
            obj.insert("psi".to_string(), wall.psi(&d).to_string().into());
        }
        println!("{}", v);
    } else {
        println!("wall: {}", wall);
        println!("proper: {}", wall.is_proper());
        if wall.is_proper() {
            println!("reduced: {}", wall.is_reduced());
            println!("weight: {}", wall.weight(&d));
            println!("psi: {}", wall.psi(&d));
        }
    }
    Ok(true)
}

fn run_b4seq(a: &B4Args) -> Result<bool, CrystalError> {
    let (seq_a, seq_b) = b4_coefficients(a.count);
    let join = |v: &[i64]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("a: {}", join(&seq_a));
    println!("b: {}", join(&seq_b));
    Ok(true)
}

/// One (type, depth) sweep target with its cap already resolved.
struct SweepTarget {
    ty: String,
    depth: usize,
    cap: usize,
}

fn typed_targets(
    a: &VerifyArgs,
    family: Family,
    ranks_ok: impl Fn(usize) -> bool,
    suite_name: &str,
    defaults: &[(&str, usize)],
) -> Result<Vec<SweepTarget>, CrystalError> {
    match a.ty.as_deref() {
        None => defaults
            .iter()
            .map(|&(ty, depth)| {
                let d = datum(ty)?;
                Ok(SweepTarget {
                    ty: ty.to_string(),
                    depth: a.depth.unwrap_or(depth),
                    cap: depth_cap(&d),
                })
            })
            .collect(),
        Some(ty) => {
            let d = datum(ty)?;
            if d.affine_type().family() != family || !ranks_ok(d.n()) {
                return Err(CrystalError::Parse(format!(
                    "suite {} does not cover type {}",
                    suite_name,
                    d.affine_type()
                )));
            }
            let cap = depth_cap(&d);
            Ok(vec![SweepTarget {
                ty: ty.to_string(),
                depth: a.depth.unwrap_or(cap),
                cap,
            }])
        }
    }
}

fn run_typed_sweep(target: &SweepTarget, force: bool) -> Result<Vec<Report>, CrystalError> {
    check_depth(&target.ty, target.depth, target.cap, force)?;
    let d = datum(&target.ty)?;
    let delta = verify_delta(&d, target.depth);
    let axioms = verify_axioms(
        &d,
        CrystalVariant::ModifiedInfinity,
        Monomial::one(),
        mcrystal::cartan::WeightVector::zero(d.index_count()),
        target.depth,
    );
    Ok(vec![delta, axioms])
}

fn wall_targets(a: &VerifyArgs) -> Result<Vec<(usize, usize)>, CrystalError> {
    match a.ty.as_deref() {
        None => Ok(vec![
            (2, a.depth.unwrap_or(6)),
            (3, a.depth.unwrap_or(5)),
        ]),
        Some(ty) => {
            let d = datum(ty)?;
            if d.affine_type().family() != Family::A {
                return Err(CrystalError::UnsupportedType(format!(
                    "walls exist only in type A, not {}",
                    d.affine_type()
                )));
            }
            let n = d.n();
            Ok(vec![(n, a.depth.unwrap_or(wall_depth_cap(n)))])
        }
    }
}

fn run_verify(a: &VerifyArgs) -> Result<bool, CrystalError> {
    let mut reports: Vec<Report> = Vec::new();
    let suites: Vec<Suite> = match a.suite {
        Suite::All => vec![Suite::A1, Suite::An, Suite::B3, Suite::Bn, Suite::Walls, Suite::B4Seq],
        s => vec![s],
    };
    for suite in suites {
        match suite {
            Suite::A1 => {
                for t in typed_targets(a, Family::A, |n| n == 1, "a1", &[("A1", 10)])? {
                    reports.extend(run_typed_sweep(&t, a.force)?);
                }
            }
            Suite::An => {
                let defaults = [("A2", 7), ("A3", 7), ("A4", 6)];
                for t in typed_targets(a, Family::A, |n| n >= 2, "an", &defaults)? {
                    reports.extend(run_typed_sweep(&t, a.force)?);
                }
            }
            Suite::B3 => {
                for t in typed_targets(a, Family::B, |n| n == 3, "b3", &[("B3", 6)])? {
                    reports.extend(run_typed_sweep(&t, a.force)?);
                }
            }
            Suite::Bn => {
                for t in typed_targets(a, Family::B, |n| n >= 4, "bn", &[("B4", 5)])? {
                    reports.extend(run_typed_sweep(&t, a.force)?);
                }
            }
            Suite::Walls => {
                for (n, depth) in wall_targets(a)? {
                    check_depth(&format!("walls n={}", n), depth, wall_depth_cap(n), a.force)?;
                    reports.push(verify_wall_iso(n, depth));
                }
            }
            Suite::B4Seq => {
                let count = a.depth.unwrap_or(21);
                let (seq_a, seq_b) = b4_coefficients(count);
                let join = |v: &[i64]| {
                    v.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                if !a.json {
                    println!("a: {}", join(&seq_a));
                    println!("b: {}", join(&seq_b));
                }
                reports.push(verify_b4(count));
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    if a.json {
        let values: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
        println!("{}", serde_json::Value::Array(values));
    } else {
        for r in &reports {
            println!("{}", r.human_line());
        }
    }
    Ok(reports.iter().all(|r| r.ok()))
}
