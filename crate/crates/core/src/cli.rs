//! Command-line front end. Every command prints a human-readable report or,
//! with `--json`, the corresponding record. Exit status is 0 on success, 2
//! when the input is rejected and 1 on internal or I/O failure.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::aut::{build_h, entropy};
use crate::divisors::{orbit_ratio_sequence, represent, DivisorClass};
use crate::error::Error;
use crate::lattice::{make_lattice, Rank2Lattice};
use crate::pell::{
    general_pell_orbits, is_square, neg_pell_fundamental, pell1_fundamental, pell4_fundamental,
    PellSolution,
};
use crate::record::{
    class_record, classify_request, format_significant, matrix_from_record, ClassificationRecord,
    ErrorRecord, Int, LatticeRequest, OrbitRow, PellRecord, Variant, TOOL_VERSION,
};

#[derive(Parser, Debug)]
#[command(
    name = "k3aut",
    version,
    about = "Automorphism groups of K3 surfaces of Picard number two",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Significant digits for entropy values and ratios.
    #[arg(long, global = true, default_value_t = 12)]
    digits: usize,
    /// Write output to PATH instead of standard output.
    #[arg(short = 'o', long = "output", global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct GramArgs {
    /// Half the self-intersection of the first basis vector.
    #[arg(short, allow_negative_numbers = true)]
    a: i64,
    /// Intersection of the two basis vectors.
    #[arg(short, allow_negative_numbers = true)]
    b: i64,
    /// Half the self-intersection of the second basis vector.
    #[arg(short, allow_negative_numbers = true)]
    c: i64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether Aut(X) is finite, infinite cyclic or infinite dihedral.
    Classify(GramArgs),
    /// The generator of the infinite part of Aut(X) and its symplectic tag.
    Generator(GramArgs),
    /// Anti-symplectic involutions preserving the positive cone.
    Involutions(GramArgs),
    /// Entropy of the positive rotation, the generator and the involutions.
    Entropy(GramArgs),
    /// Solve u² − d·v² = m up to multiplication by the fundamental unit.
    Pell {
        d: i64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        norm: i64,
        /// Also list every solution with |v| ≤ V.
        #[arg(long, value_name = "V")]
        all_below: Option<u64>,
    },
    /// Classes of square 2k, one per orbit of the positive rotation.
    Represent {
        #[command(flatten)]
        gram: GramArgs,
        #[arg(short, allow_negative_numbers = true)]
        k: i64,
    },
    /// Iterate the positive rotation on a class and track x/y.
    Orbit {
        #[command(flatten)]
        gram: GramArgs,
        /// Seed class as x,y.
        #[arg(long, value_parser = parse_pair, allow_negative_numbers = true)]
        start: (BigInt, BigInt),
        #[arg(short = 'N', default_value_t = 10)]
        steps: usize,
        /// Emit CSV instead of a table.
        #[arg(long)]
        csv: bool,
    },
    /// Picard lattice of a quartic containing a curve of given degree and genus.
    Quartic {
        #[arg(long)]
        deg: i64,
        #[arg(long)]
        genus: i64,
    },
    /// Classify every request in a JSONL file, preserving line order.
    Batch {
        /// Input file, or `-` for standard input.
        input: PathBuf,
    },
}

fn parse_pair(s: &str) -> Result<(BigInt, BigInt), String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| format!("not an integer: {t:?}"))
    };
    Ok((parse(x)?, parse(y)?))
}

/// Outcome of a command: text to emit and the exit status.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Parses `std::env::args` and runs the command, returning the exit status.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    run_cli(cli)
}

pub fn run_cli(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok(outcome) => match emit(&cli, &outcome.text) {
            Ok(()) => outcome.code,
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if e.is_domain_rejection() {
                2
            } else {
                1
            }
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn emit(cli: &Cli, text: &str) -> io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Classify(g) => Ok(record_command(cli, g, render_classify)),
        Command::Generator(g) => Ok(record_command(cli, g, render_generator)),
        Command::Involutions(g) => Ok(record_command(cli, g, render_involutions)),
        Command::Entropy(g) => Ok(record_command(cli, g, render_entropy)),
        Command::Quartic { deg, genus } => {
            let rec = classify_request(&LatticeRequest::quartic(*deg, *genus), cli.digits);
            Ok(render_record(cli, &rec, render_classify))
        }
        Command::Pell {
            d,
            norm,
            all_below,
        } => cmd_pell(cli, *d, *norm, *all_below),
        Command::Represent { gram, k } => cmd_represent(cli, gram, *k),
        Command::Orbit {
            gram,
            start,
            steps,
            csv,
        } => cmd_orbit(cli, gram, start, *steps, *csv),
        Command::Batch { input } => cmd_batch(cli, input),
    }
}

fn record_command(
    cli: &Cli,
    g: &GramArgs,
    render: fn(&ClassificationRecord, usize, &mut String),
) -> Outcome {
    let rec = classify_request(&LatticeRequest::gram(g.a, g.b, g.c), cli.digits);
    render_record(cli, &rec, render)
}

fn render_record(
    cli: &Cli,
    rec: &ClassificationRecord,
    render: fn(&ClassificationRecord, usize, &mut String),
) -> Outcome {
    let code = rec.exit_code();
    if cli.json {
        return Outcome {
            text: to_json(rec),
            code,
        };
    }
    if let Some(err) = &rec.error {
        eprintln!("error: {}", err.message);
        return Outcome {
            text: String::new(),
            code,
        };
    }
    let mut out = String::new();
    render_header(rec, &mut out);
    render(rec, cli.digits, &mut out);
    for caveat in &rec.caveats {
        out.push_str(&format!("note         {caveat}\n"));
    }
    Outcome { text: out, code }
}

fn show(m: &[[Int; 2]; 2]) -> String {
    matrix_from_record(m).to_string()
}

fn render_header(rec: &ClassificationRecord, out: &mut String) {
    if let Some([a, b, c]) = &rec.lattice {
        out.push_str(&format!("lattice      ({a}, {b}, {c})\n"));
    }
    if let Some(d) = &rec.d {
        out.push_str(&format!("d            {d}\n"));
    }
    if let Some(v) = rec.variant {
        out.push_str(&format!("variant      {}\n", v.as_str()));
    }
    if let Some(w) = &rec.witness {
        let kind = serde_json::to_value(w.kind).expect("serializes");
        out.push_str(&format!(
            "witness      {} ({}, {})\n",
            kind.as_str().unwrap_or_default(),
            w.class[0],
            w.class[1]
        ));
    }
}

fn render_generator_lines(rec: &ClassificationRecord, out: &mut String) {
    if let (Some(h), Some(k), Some(eps), Some(g)) = (&rec.h, rec.k, rec.epsilon, &rec.generator) {
        out.push_str(&format!("h            {}\n", show(h)));
        out.push_str(&format!(
            "generator    h^{k} = {}  epsilon {}\n",
            show(g),
            if eps > 0 { "+1" } else { "-1" }
        ));
    }
}

fn render_classify(rec: &ClassificationRecord, _digits: usize, out: &mut String) {
    render_generator_lines(rec, out);
    if let Some(e) = &rec.entropy {
        out.push_str(&format!("entropy      {}\n", e.text));
    }
    if let (Some(s), Some(t)) = (&rec.sigma, &rec.tau) {
        out.push_str(&format!("sigma        {}\n", show(s)));
        out.push_str(&format!("tau          {}\n", show(t)));
    }
}

fn render_generator(rec: &ClassificationRecord, _digits: usize, out: &mut String) {
    if rec.generator.is_none() {
        out.push_str("generator    none: Aut(X) is finite\n");
    }
    render_generator_lines(rec, out);
}

fn render_involutions(rec: &ClassificationRecord, _digits: usize, out: &mut String) {
    if rec.involutions.is_empty() {
        out.push_str("involutions  none\n");
    }
    for (i, m) in rec.involutions.iter().enumerate() {
        out.push_str(&format!("involution {i} {}\n", show(m)));
    }
}

fn render_entropy(rec: &ClassificationRecord, digits: usize, out: &mut String) {
    let Some(e) = &rec.entropy else {
        out.push_str("entropy      0 (Aut(X) is finite)\n");
        return;
    };
    if let Some(h) = &rec.h {
        let value = entropy(&matrix_from_record(h));
        out.push_str(&format!("entropy(h)   {}\n", format_significant(value, digits)));
    }
    out.push_str(&format!(
        "entropy(g)   {}  trace {}  char. discriminant {}\n",
        e.text, e.trace, e.char_discriminant
    ));
    if let Some(s) = &rec.symplectic_entropy {
        out.push_str(&format!("entropy(g²)  {}  (symplectic)\n", s.text));
    }
    for m in &rec.involutions {
        out.push_str(&format!("entropy({})  0\n", show(m)));
    }
}

fn pair(s: &PellSolution) -> [Int; 2] {
    [(&s.u).into(), (&s.v).into()]
}

fn cmd_pell(cli: &Cli, d: i64, norm: i64, all_below: Option<u64>) -> Result<Outcome, Failure> {
    if d <= 0 {
        return Err(Error::NonPositiveD(d).into());
    }
    if is_square(d) {
        if norm != 1 {
            return Err(Error::SquareInput(d).into());
        }
        let text = if cli.json {
            to_json(&PellRecord {
                tool_version: TOOL_VERSION.into(),
                d: d.into(),
                norm: norm.into(),
                unit: [1.into(), 0.into()],
                fundamental: None,
                representatives: vec![[1.into(), 0.into()], [(-1).into(), 0.into()]],
                solutions_below: None,
            })
        } else {
            "trivial only: (±1,0)\n".to_string()
        };
        return Ok(Outcome::ok(text));
    }
    let orbits = general_pell_orbits(d, norm)?;
    let fundamental = match norm {
        1 => Some(pell1_fundamental(d)?),
        -1 => neg_pell_fundamental(d)?,
        4 => Some(pell4_fundamental(d)?),
        _ => None,
    };
    let below = all_below.map(|v| orbits.solutions_below(&BigInt::from(v)));
    if cli.json {
        return Ok(Outcome::ok(to_json(&PellRecord {
            tool_version: TOOL_VERSION.into(),
            d: d.into(),
            norm: norm.into(),
            unit: pair(&orbits.unit),
            fundamental: fundamental.as_ref().map(pair),
            representatives: orbits.representatives.iter().map(pair).collect(),
            solutions_below: below.map(|s| s.iter().map(pair).collect()),
        })));
    }
    let mut out = format!("u² − {d}·v² = {norm}\n");
    out.push_str(&format!("unit         ({}, {})\n", orbits.unit.u, orbits.unit.v));
    if let Some(f) = &fundamental {
        out.push_str(&format!("fundamental  ({}, {})\n", f.u, f.v));
    }
    if orbits.is_empty() {
        out.push_str("no solutions\n");
    } else {
        out.push_str(&format!("orbits       {}\n", orbits.representatives.len()));
        for r in &orbits.representatives {
            out.push_str(&format!("  ({}, {})\n", r.u, r.v));
        }
    }
    if let (Some(list), Some(v)) = (&below, all_below) {
        out.push_str(&format!("solutions with |v| ≤ {v}: {}\n", list.len()));
        for s in list {
            out.push_str(&format!("  ({}, {})\n", s.u, s.v));
        }
    }
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct RepresentRecord {
    tool_version: String,
    lattice: [Int; 3],
    k: Int,
    classes: Vec<[Int; 2]>,
}

fn cmd_represent(cli: &Cli, g: &GramArgs, k: i64) -> Result<Outcome, Failure> {
    let lattice = make_lattice(g.a, g.b, g.c)?;
    let classes: Vec<DivisorClass> = represent(&lattice, k)?
        .into_iter()
        .map(|cls| {
            let (x, y) = lattice.to_input_vector(&cls.x, &cls.y);
            DivisorClass { x, y }
        })
        .collect();
    if cli.json {
        return Ok(Outcome::ok(to_json(&RepresentRecord {
            tool_version: TOOL_VERSION.into(),
            lattice: [g.a.into(), g.b.into(), g.c.into()],
            k: k.into(),
            classes: classes.iter().map(class_record).collect(),
        })));
    }
    let mut out = format!("classes of square {} on ({}, {}, {})\n", 2 * k, g.a, g.b, g.c);
    if classes.is_empty() {
        out.push_str("none\n");
    }
    for cls in &classes {
        out.push_str(&format!("  {cls}\n"));
    }
    Ok(Outcome::ok(out))
}

fn orbit_rows(
    lattice: &Rank2Lattice,
    start: &(BigInt, BigInt),
    steps: usize,
    digits: usize,
) -> Result<Vec<OrbitRow>, Error> {
    let h = build_h(lattice)?;
    let (x0, y0) = lattice.from_input_vector(&start.0, &start.1);
    let seq = orbit_ratio_sequence(lattice, &DivisorClass { x: x0, y: y0 }, &h, steps)?;
    let (a, b, c) = lattice.input();
    let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
    Ok(seq
        .into_iter()
        .map(|p| {
            let (x, y) = lattice.to_input_vector(&p.class.x, &p.class.y);
            let ratio = (!num_traits::Zero::is_zero(&y)).then(|| BigRational::new(x.clone(), y.clone()));
            let residual = ratio.as_ref().map(|r| {
                let a = BigRational::from_integer(a.clone());
                let b = BigRational::from_integer(b.clone());
                let c = BigRational::from_integer(c.clone());
                (a * r * r + b * r + c).abs()
            });
            OrbitRow {
                n: p.n,
                x: x.into(),
                y: y.into(),
                ratio: ratio.map(|r| format_significant(r.to_f64().unwrap_or(f64::NAN), digits)),
                residual: residual.map(|r| {
                    format!("{:.*e}", digits.max(1) - 1, r.to_f64().unwrap_or(f64::NAN))
                }),
            }
        })
        .collect())
}

fn cmd_orbit(
    cli: &Cli,
    g: &GramArgs,
    start: &(BigInt, BigInt),
    steps: usize,
    csv: bool,
) -> Result<Outcome, Failure> {
    let lattice = make_lattice(g.a, g.b, g.c)?;
    let rows = orbit_rows(&lattice, start, steps, cli.digits)?;
    if cli.json {
        return Ok(Outcome::ok(to_json(&rows)));
    }
    let blank = String::new();
    let mut out = String::new();
    if csv {
        out.push_str("n,x,y,ratio,residual\n");
        for r in &rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.n,
                r.x,
                r.y,
                r.ratio.as_ref().unwrap_or(&blank),
                r.residual.as_ref().unwrap_or(&blank)
            ));
        }
    } else {
        out.push_str(&format!(
            "{:>4}  {:>24}  {:>24}  {:>18}  {:>20}\n",
            "n", "x", "y", "x/y", "|a r² + b r + c|"
        ));
        for r in &rows {
            out.push_str(&format!(
                "{:>4}  {:>24}  {:>24}  {:>18}  {:>20}\n",
                r.n,
                r.x.to_string(),
                r.y.to_string(),
                r.ratio.as_deref().unwrap_or("-"),
                r.residual.as_deref().unwrap_or("-")
            ));
        }
    }
    Ok(Outcome::ok(out))
}

/// Classifies each line of a JSONL document; line `i` of the result answers
/// line `i` of the input.
pub fn batch_records(input: &str, digits: usize) -> Vec<ClassificationRecord> {
    let lines: Vec<&str> = input.lines().collect();
    lines
        .par_iter()
        .map(|line| match serde_json::from_str::<LatticeRequest>(line) {
            Ok(req) => classify_request(&req, digits),
            Err(e) => ClassificationRecord::failure(
                LatticeRequest::default(),
                ErrorRecord {
                    kind: "parse".into(),
                    message: format!("malformed request: {e}"),
                },
            ),
        })
        .collect()
}

/// Counts of records per variant, plus errors.
pub fn batch_summary(records: &[ClassificationRecord]) -> BTreeMap<&'static str, usize> {
    let mut counts: BTreeMap<&'static str, usize> = [
        Variant::Finite,
        Variant::Cyclic,
        Variant::Dihedral,
        Variant::Degenerate,
    ]
    .into_iter()
    .map(|v| (v.as_str(), 0))
    .collect();
    counts.insert("errors", 0);
    for rec in records {
        if let Some(v) = rec.variant {
            *counts.entry(v.as_str()).or_default() += 1;
        }
        if rec.error.is_some() {
            *counts.entry("errors").or_default() += 1;
        }
    }
    counts
}

fn cmd_batch(cli: &Cli, input: &PathBuf) -> Result<Outcome, Failure> {
    let text = if input.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(input)
            .map_err(|e| Failure::Io(format!("{}: {e}", input.display())))?
    };
    let records = batch_records(&text, cli.digits);
    let mut out = String::new();
    for rec in &records {
        out.push_str(&serde_json::to_string(rec).expect("records serialize"));
        out.push('\n');
    }
    let summary = batch_summary(&records);
    let parts: Vec<String> = summary.iter().map(|(k, v)| format!("{k} {v}")).collect();
    eprintln!("records {}: {}", records.len(), parts.join(", "));
    Ok(Outcome::ok(out))
}
