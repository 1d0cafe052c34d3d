//! The `sfc` command-line interface.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};

use crate::curve::{all_single_base, CurveEncoding};
use crate::error::Error;
use crate::geometry::{curve_path, index_at, index_with_digits, locate_trace, Coord, PointPath};
use crate::grammar::{Direction, Rotation};
use crate::render;
use crate::structure::{
    classify, completely_distinct, partially_identical, same_shape, ShapeClass, Taxonomy,
};
use crate::transform::{infer_encoding, Port, Transform};

#[derive(Debug, Parser)]
#[command(
    name = "sfc",
    version,
    about = "Generate, transform and classify square space-filling curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Ascii,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    Closed,
    Recursive,
    SubunitIdentical,
    SubunitDifferent,
    NonRecursive,
    SymmetricA,
    SymmetricAb,
    Hilbert,
    HilbertVariant,
    BetaOmega,
    BetaOmegaVariant,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand an encoding and print its point path.
    Gen {
        encoding: String,
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        entry: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Apply a transform: rot90|rot180|rot270|h|v|d1|d-1|reverse|reduce:<i>.
    Xform {
        encoding: String,
        #[arg(allow_hyphen_values = true)]
        ops: Vec<String>,
    },
    /// Report shape group, taxonomy and structural flags.
    Classify {
        encoding: String,
        /// Compare with a second curve.
        #[arg(long)]
        against: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Coordinate of the n-th point (1-based).
    Locate {
        encoding: String,
        n: u64,
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        entry: String,
        /// Print the digit-by-digit trace.
        #[arg(long)]
        verbose: bool,
    },
    /// Index of a point, from the bounding box or the entry point.
    Index {
        encoding: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
        /// x0,y0,x1,y1
        #[arg(long, allow_hyphen_values = true)]
        bbox: Option<String>,
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        entry: String,
        #[arg(long)]
        verbose: bool,
    },
    /// Recover an encoding from a point-path JSON file ("-" for stdin).
    Infer {
        file: String,
        /// Entry heading in degrees, or "closed".
        #[arg(long)]
        entry_dir: Option<String>,
        #[arg(long)]
        exit_dir: Option<String>,
        /// Treat both end headings as unknown.
        #[arg(long)]
        free_ends: bool,
        #[arg(long)]
        json: bool,
    },
    /// List single-base curves of a level in sorted order.
    Enumerate {
        k: usize,
        #[arg(long)]
        count: bool,
        /// One representative (the smallest encoding) per shape.
        #[arg(long)]
        shapes: bool,
        #[arg(long, value_enum)]
        filter: Vec<Filter>,
        #[arg(long, value_enum, default_value = "csv")]
        format: EnumFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumFormat {
    Csv,
    Json,
    Plain,
}

/// Failure of a command with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// 2 for parse errors, 3 for invalid curves, 4 for out-of-domain requests.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::Position { .. }
        | Error::SingletonC { .. }
        | Error::SelfIntersection { .. }
        | Error::Disconnected { .. }
        | Error::NoSuccessor(_)
        | Error::NotAWalk(_)
        | Error::InconsistentEndpoints(_)
        | Error::RuleDerivation { .. } => 3,
        Error::OutOfRange { .. }
        | Error::LevelTooLarge { .. }
        | Error::NotSingleBase
        | Error::LevelTooSmall { .. }
        | Error::NoMatch(_)
        | Error::Mismatch(_) => 4,
    }
}

fn parse_ints(s: &str, n: usize, what: &str) -> Result<Vec<i64>, Failure> {
    let v: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
    match v {
        Ok(v) if v.len() == n => Ok(v),
        _ => Err(usage(format!(
            "expected {what} as {n} comma-separated integers, got {s:?}"
        ))),
    }
}

fn parse_coord(s: &str) -> Result<Coord, Failure> {
    let v = parse_ints(s, 2, "x,y")?;
    Ok(Coord::new(v[0], v[1]))
}

fn parse_port(s: &str) -> Result<Port, Failure> {
    match s {
        "closed" | "none" => Ok(Port::Closed),
        "any" | "unknown" => Ok(Port::Unknown),
        _ => s
            .parse::<i64>()
            .ok()
            .and_then(Rotation::checked)
            .map(|r| Port::Dir(Direction::new(r)))
            .ok_or_else(|| usage(format!("bad heading {s:?}"))),
    }
}

/// Runs one command and returns its standard output.
pub fn execute(cli: &Cli) -> Result<String, Failure> {
    let mut out = String::new();
    match &cli.command {
        Command::Gen {
            encoding,
            entry,
            format,
        } => {
            let e = CurveEncoding::parse(encoding)?;
            let p = curve_path(&e, parse_coord(entry)?)?;
            out = match format {
                Format::Json => render::to_json(&p) + "\n",
                Format::Csv => render::to_csv(&p),
                Format::Svg => render::to_svg(&p),
                Format::Ascii => render::to_ascii(&p),
            };
        }
        Command::Xform { encoding, ops } => {
            let mut e = CurveEncoding::parse(encoding)?;
            for op in ops {
                e = op.parse::<Transform>()?.apply(&e)?;
            }
            let _ = writeln!(out, "{e}");
        }
        Command::Classify {
            encoding,
            against,
            json,
        } => {
            let e = CurveEncoding::parse(encoding)?;
            let c = classify(&e)?;
            let other = match against {
                Some(s) => Some(compare(&e, &CurveEncoding::parse(s)?)?),
                None => None,
            };
            if *json {
                let mut v = serde_json::to_value(&c).expect("serializable");
                if let Some(o) = other {
                    v["against"] = serde_json::to_value(o).expect("serializable");
                }
                out = serde_json::to_string_pretty(&v).expect("serializable") + "\n";
            } else {
                out = report(&c);
                for (k, v) in other.into_iter().flatten() {
                    let _ = writeln!(out, "{k}: {v}");
                }
            }
        }
        Command::Locate {
            encoding,
            n,
            entry,
            verbose,
        } => {
            let e = CurveEncoding::parse(encoding)?;
            let t = locate_trace(&e, *n, parse_coord(entry)?)?;
            if *verbose {
                let digits: String = t.digits.iter().map(|d| d.to_string()).collect();
                let _ = writeln!(out, "square: {} entry {}", t.square, t.square_entry);
                let _ = writeln!(out, "digits: {digits}");
                for (a, s) in t.anchors.iter().zip(&t.subunits) {
                    let _ = writeln!(out, "anchor: {a} {s}");
                }
            }
            let _ = writeln!(out, "{}", t.point);
        }
        Command::Index {
            encoding,
            point,
            bbox,
            entry,
            verbose,
        } => {
            let e = CurveEncoding::parse(encoding)?;
            let target = parse_coord(point)?;
            match bbox {
                Some(b) => {
                    let v = parse_ints(b, 4, "x0,y0,x1,y1")?;
                    let bb = (Coord::new(v[0], v[1]), Coord::new(v[2], v[3]));
                    let (n, digits) = index_with_digits(&e, target, bb)?;
                    if *verbose {
                        let d: String = digits.iter().map(|d| d.to_string()).collect();
                        let _ = writeln!(out, "digits: {d}");
                    }
                    let _ = writeln!(out, "{n}");
                }
                None => {
                    let n = index_at(&e, target, parse_coord(entry)?)?;
                    let _ = writeln!(out, "{n}");
                }
            }
        }
        Command::Infer {
            file,
            entry_dir,
            exit_dir,
            free_ends,
            json,
        } => {
            let text = read_input(file)?;
            let path: PointPath = serde_json::from_str(&text)
                .map_err(|e| usage(format!("invalid point path JSON: {e}")))?;
            let mut entry = Port::from_option(path.entry_dir);
            let mut exit = Port::from_option(path.exit_dir);
            if *free_ends {
                entry = Port::Unknown;
                exit = Port::Unknown;
            }
            if let Some(s) = entry_dir {
                entry = parse_port(s)?;
            }
            if let Some(s) = exit_dir {
                exit = parse_port(s)?;
            }
            let inf = infer_encoding(&path, entry, exit)?;
            if *json {
                out = serde_json::to_string_pretty(&inf).expect("serializable") + "\n";
            } else {
                let _ = writeln!(out, "{}", inf.encoding);
                if inf.ambiguous {
                    let all: Vec<String> = inf.candidates.iter().map(|c| c.to_string()).collect();
                    eprintln!("ambiguous; candidates: {}", all.join(" "));
                }
            }
        }
        Command::Enumerate {
            k,
            count,
            shapes,
            filter,
            format,
        } => {
            out = enumerate(*k, *count, *shapes, filter, *format)?;
        }
    }
    Ok(out)
}

fn read_input(file: &str) -> Result<String, Failure> {
    let mut s = String::new();
    let r = if file == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| s = t)
    };
    r.map_err(|e| usage(format!("cannot read {file}: {e}")))?;
    Ok(s)
}

fn compare(
    a: &CurveEncoding,
    b: &CurveEncoding,
) -> Result<BTreeMap<&'static str, String>, Failure> {
    let mut m = BTreeMap::new();
    m.insert("same-shape", same_shape(a, b)?.to_string());
    m.insert(
        "partially-identical",
        partially_identical(a, b)?.map_or("none".into(), |t| t.to_string()),
    );
    let distinct = a.level() >= 2 && b.level() == a.level() && completely_distinct(a, b)?;
    m.insert("completely-distinct", distinct.to_string());
    Ok(m)
}

fn report(c: &ShapeClass) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "encoding: {}", c.encoding);
    let _ = writeln!(s, "induced: {:?}", c.induced);
    let _ = writeln!(s, "group: {}", c.group);
    if let Some(d) = c.delta {
        let _ = writeln!(s, "delta: {} (level {})", d.delta, d.level);
    }
    if let Some(f) = c.family {
        let _ = writeln!(s, "family: {f}");
    }
    let _ = writeln!(s, "taxonomy: {}", c.taxonomy);
    let f = &c.flags;
    for (name, on) in [
        ("recursive", f.recursive),
        ("subunit-identical", f.subunit_identical),
        ("subunit-different", f.subunit_different),
        ("completely-non-recursive", f.completely_non_recursive),
        ("symmetric-A", f.symmetric_a),
        ("symmetric-AB", f.symmetric_ab),
        ("closed", f.closed),
    ] {
        let _ = writeln!(s, "{name}: {on}");
    }
    s
}

fn keep(c: &ShapeClass, f: Filter) -> bool {
    let fl = &c.flags;
    match f {
        Filter::Closed => fl.closed,
        Filter::Recursive => fl.recursive,
        Filter::SubunitIdentical => fl.subunit_identical,
        Filter::SubunitDifferent => fl.subunit_different,
        Filter::NonRecursive => fl.completely_non_recursive,
        Filter::SymmetricA => fl.symmetric_a,
        Filter::SymmetricAb => fl.symmetric_ab,
        Filter::Hilbert => c.taxonomy == Taxonomy::Hilbert,
        Filter::HilbertVariant => matches!(c.taxonomy, Taxonomy::HilbertVariant { .. }),
        Filter::BetaOmega => matches!(c.taxonomy, Taxonomy::BetaOmega(_)),
        Filter::BetaOmegaVariant => matches!(c.taxonomy, Taxonomy::BetaOmegaVariant { .. }),
    }
}

fn enumerate(
    k: usize,
    count: bool,
    shapes: bool,
    filters: &[Filter],
    format: EnumFormat,
) -> Result<String, Failure> {
    let mut all: Vec<CurveEncoding> = all_single_base(k);
    all.sort_by_key(|e| e.to_string());
    if k < 2 {
        if !filters.is_empty() {
            return Err(Error::LevelTooSmall { level: k, min: 2 }.into());
        }
        if shapes {
            all.truncate(1);
        }
        if count {
            return Ok(format!("{}\n", all.len()));
        }
        return Ok(all.iter().map(|e| format!("{e}\n")).collect());
    }
    let mut rows: Vec<ShapeClass> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for e in &all {
        let c = classify(e)?;
        if !filters.iter().all(|&f| keep(&c, f)) {
            continue;
        }
        if shapes && !seen.insert((c.induced, c.group, c.delta)) {
            continue;
        }
        rows.push(c);
    }
    if count {
        return Ok(format!("{}\n", rows.len()));
    }
    Ok(match format {
        EnumFormat::Plain => rows.iter().map(|c| format!("{}\n", c.encoding)).collect(),
        EnumFormat::Json => serde_json::to_string_pretty(&rows).expect("serializable") + "\n",
        EnumFormat::Csv => {
            let mut s = String::from("encoding,induced,group,delta,taxonomy,family,flags\n");
            for c in &rows {
                let _ = writeln!(
                    s,
                    "{},{:?},{},{},{},{},{}",
                    c.encoding,
                    c.induced,
                    c.group,
                    c.delta.map_or(String::new(), |d| d.delta.to_string()),
                    c.taxonomy,
                    c.family.map_or(String::new(), |f| f.to_string()),
                    c.flags.names().join(" ")
                );
            }
            s
        }
    })
}

/// Parses arguments, runs the command, prints the result and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(s) => {
            print!("{s}");
            0
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
