use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use tangle_core::diagram::{parse_diagram, trace_components, validate, writhe, AmbientDim, Diagram};
use tangle_core::eval::datum::{scalar_laurent_datum, swap_datum};
use tangle_core::eval::{
    bracket_state_sum, evaluate, jones_normalized, kauffman_datum, parse_datum, AnyDatum, EvalError, Laurent,
    RigidDatum, Ring,
};
use tangle_core::rewrite::{normalize_planar, simplify, RewriteError};
use tangle_core::segal::{free_monoid_nerve, seg_complete, wedge, FiniteCategory, SegCompletion};
use tangle_core::simplex::{phi_hull, ConvexSubset, MonotoneMap};
use tangle_core::words::{alternating_factorization, star_enumerate, FiniteMonoid, FreeMonoid, Letter, PointedMonoid};

use crate::expr::{parse_expr, BuildError};

#[derive(Parser, Debug, Clone)]
#[command(name = "tangle", version, about = "Framed tangle diagrams: validation, rewriting and evaluation")]
pub struct CommandConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Ambient dimension: 2 planar, 3 braided, 4 or more symmetric.
    #[arg(long, global = true)]
    pub dim: Option<u32>,
    /// Datum preset (kauffman, scalar, swap, trivial) or a datum file.
    #[arg(long, global = true)]
    pub datum: Option<String>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Type-check a diagram and report its shape.
    Validate(Input),
    /// Planar normal form, or the reduced diagram when crossings are allowed.
    Normalize(Input),
    /// Evaluate through a rigid datum.
    Eval(Input),
    /// Bracket, writhe-normalized bracket and writhe of a closed diagram.
    Invariant(Input),
    /// Alternating words.
    Words {
        #[command(subcommand)]
        command: WordsCommand,
    },
    /// Free products of monoids.
    Star {
        #[command(subcommand)]
        command: StarCommand,
    },
    /// Segal completion of simplicial data.
    Seg {
        #[command(subcommand)]
        command: SegCommand,
    },
    /// Finite ordinals.
    Simplex {
        #[command(subcommand)]
        command: SimplexCommand,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// File with an expression or a `tangle` block; standard input when absent or `-`.
    pub file: Option<PathBuf>,
    /// Inline expression.
    #[arg(long, short, conflicts_with = "file")]
    pub expr: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum WordsCommand {
    /// Split a word into the fewest alternating factors.
    Factor { word: String },
}

#[derive(Subcommand, Debug, Clone)]
pub enum StarCommand {
    /// List the elements of a free product up to an alternation length.
    Enum {
        /// trivial, cyclic:N, truncated:N or free:G
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 3)]
        length: usize,
        /// Largest size of a letter (word length in free monoids).
        #[arg(long, default_value_t = 1)]
        bound: usize,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum SegCommand {
    /// Present the completion as generators, relations and arrow classes.
    Complete {
        /// Nerve of a finite monoid: trivial, cyclic:N or truncated:N.
        #[arg(long, conflicts_with = "free_wedge")]
        monoid: Option<String>,
        /// Wedge of two free monoid nerves kept up to this word length.
        #[arg(long)]
        free_wedge: Option<usize>,
        /// Longest path enumerated.
        #[arg(long, default_value_t = 3)]
        budget: usize,
        /// Highest simplicial level kept.
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum SimplexCommand {
    /// Print `C^phi` for convex subsets `C` of `[target]`.
    Phi {
        #[arg(long)]
        target: usize,
        /// Values of phi, comma separated and nondecreasing.
        #[arg(long)]
        values: String,
        /// A single subset `lo,hi`; every subset when absent.
        #[arg(long)]
        subset: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    User(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::User(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

fn user(e: impl std::fmt::Display) -> CliError {
    CliError::User(e.to_string())
}

/// Text produced by a command and the exit status it asks for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String, CliError> {
    if let Some(e) = &input.expr {
        return Ok(e.clone());
    }
    match &input.file {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| user(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(user)?;
            Ok(s)
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Parse an expression or a `tangle` block.
pub fn read_diagram(text: &str) -> Result<Diagram, CliError> {
    if content_lines(text).next().is_some_and(|l| l.starts_with("tangle")) {
        return parse_diagram(text).map_err(user);
    }
    let body: Vec<&str> = content_lines(text).collect();
    let expr = parse_expr(&body.join(" ")).map_err(user)?;
    expr.to_diagram().map_err(|e| match e {
        BuildError::Builtin(_) => CliError::Internal(e.to_string()),
        BuildError::Diagram(d) => user(d),
    })
}

fn resolve_dim(flag: Option<u32>, d: &Diagram) -> Result<AmbientDim, CliError> {
    let Some(n) = flag else { return Ok(d.dim()) };
    let dim = AmbientDim::from_n(n).ok_or_else(|| user(format!("dimension {n} is not supported (use 2 or more)")))?;
    if dim < d.dim() {
        return Err(user(format!("the diagram needs dimension {} or more", d.dim().n())));
    }
    Ok(dim)
}

fn load(config: &CommandConfig, input: &Input, stdin: &mut dyn Read) -> Result<(Diagram, AmbientDim), CliError> {
    let d = read_diagram(&read_input(input, stdin)?)?;
    let dim = resolve_dim(config.dim, &d)?;
    Ok((d.promote(dim), dim))
}

fn require_valid(d: &Diagram, dim: AmbientDim) -> Result<(), CliError> {
    let report = validate(d, dim);
    if report.is_valid() {
        Ok(())
    } else {
        Err(user(report.to_string().trim_end()))
    }
}

pub fn load_datum(spec: &str) -> Result<AnyDatum, CliError> {
    Ok(match spec {
        "kauffman" => AnyDatum::Laurent(kauffman_datum()),
        "scalar" => AnyDatum::Laurent(scalar_laurent_datum()),
        "swap" => AnyDatum::Rational(swap_datum(2)),
        "trivial" => AnyDatum::Laurent(RigidDatum::<Laurent>::trivial()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| user(format!("{path}: {e}")))?;
            parse_datum(&text).map_err(user)?
        }
    })
}

fn eval_error(e: EvalError) -> CliError {
    user(e)
}

fn write_value<R: Ring>(d: &Diagram, datum: &RigidDatum<R>) -> Result<String, CliError> {
    let m = evaluate(d, datum).map_err(eval_error)?;
    let mut out = String::new();
    if d.is_closed() {
        let x = m.as_scalar().ok_or_else(|| CliError::Internal("closed diagram gave a matrix".into()))?;
        writeln!(out, "{x}").expect("string write");
        return Ok(out);
    }
    writeln!(out, "matrix {} {}", m.rows(), m.cols()).expect("string write");
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).expect("string write");
    }
    Ok(out)
}

fn cmd_validate(d: &Diagram, dim: AmbientDim) -> Output {
    let report = validate(d, dim);
    let mut out = String::new();
    writeln!(out, "dim {}", dim.n()).expect("string write");
    writeln!(out, "source {}", d.source()).expect("string write");
    writeln!(out, "target {}", d.target()).expect("string write");
    writeln!(out, "events {}", d.num_events()).expect("string write");
    writeln!(out, "crossings {}", d.num_crossings()).expect("string write");
    if report.is_valid() {
        let comps = trace_components(d);
        let closed = comps.iter().filter(|c| c.closed).count();
        writeln!(out, "components {} ({closed} closed)", comps.len()).expect("string write");
    }
    out.push_str(&report.to_string());
    Output {
        text: out,
        code: if report.is_valid() { 0 } else { 1 },
    }
}

fn cmd_normalize(d: &Diagram, dim: AmbientDim) -> Result<Output, CliError> {
    require_valid(d, dim)?;
    if dim == AmbientDim::Planar {
        let nf = normalize_planar(d).map_err(|e| match e {
            RewriteError::InvalidDiagram(_) | RewriteError::Diagram(_) => user(e),
            other => CliError::Internal(other.to_string()),
        })?;
        return Ok(Output::ok(nf.to_string()));
    }
    Ok(Output::ok(simplify(d, dim).to_string()))
}

fn cmd_invariant(d: &Diagram) -> Result<Output, CliError> {
    let bracket = bracket_state_sum(d).map_err(eval_error)?;
    let normalized = jones_normalized(d).map_err(eval_error)?;
    let w = writhe(d);
    let mut out = String::new();
    writeln!(out, "bracket {bracket}").expect("string write");
    writeln!(out, "normalized {normalized}").expect("string write");
    writeln!(out, "writhe {}", w.total).expect("string write");
    for (i, c) in w.per_component.iter().enumerate() {
        writeln!(out, "component {i} self-writhe {c}").expect("string write");
    }
    Ok(Output::ok(out))
}

fn cmd_factor(word: &str) -> Output {
    let letters: Vec<char> = word.chars().collect();
    let factors = alternating_factorization(&letters);
    let mut out = format!("factors {}\n", factors.len());
    for f in factors {
        out.push_str(&f.letters().iter().collect::<String>());
        out.push('\n');
    }
    Output::ok(out)
}

enum MonoidSpec {
    Finite(FiniteMonoid),
    Free(FreeMonoid),
}

fn parse_monoid(spec: &str) -> Result<MonoidSpec, CliError> {
    let bad = || user(format!("unknown monoid `{spec}` (use trivial, cyclic:N, truncated:N or free:G)"));
    if spec == "trivial" {
        return Ok(MonoidSpec::Finite(FiniteMonoid::trivial()));
    }
    let (name, n) = spec.split_once(':').ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    match (name, n) {
        ("cyclic", n) if n >= 1 => Ok(MonoidSpec::Finite(FiniteMonoid::cyclic(n))),
        ("truncated", n) if n >= 1 => Ok(MonoidSpec::Finite(FiniteMonoid::truncated(n))),
        ("free", g) => Ok(MonoidSpec::Free(FreeMonoid::new(g))),
        _ => Err(bad()),
    }
}

trait ElemText {
    fn text(&self) -> String;
}

impl ElemText for usize {
    fn text(&self) -> String {
        self.to_string()
    }
}

impl ElemText for Vec<usize> {
    fn text(&self) -> String {
        self.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
    }
}

fn star_listing<MA, MB>(a: &MA, b: &MB, length: usize, bound: usize) -> String
where
    MA: PointedMonoid,
    MB: PointedMonoid,
    MA::Elem: ElemText,
    MB::Elem: ElemText,
{
    let elems = star_enumerate(a, b, length, bound);
    let mut out = String::new();
    for e in &elems {
        let letters: Vec<String> = e
            .letters()
            .iter()
            .map(|l| match l {
                Letter::Left(x) => format!("a{}", x.text()),
                Letter::Right(y) => format!("b{}", y.text()),
            })
            .collect();
        let body = if letters.is_empty() { "1".to_string() } else { letters.join(" ") };
        writeln!(out, "{:?} {body}", e.stratum()).expect("string write");
    }
    writeln!(out, "count {}", elems.len()).expect("string write");
    out
}

fn cmd_star(left: &str, right: &str, length: usize, bound: usize) -> Result<Output, CliError> {
    use MonoidSpec::{Finite, Free};
    let text = match (parse_monoid(left)?, parse_monoid(right)?) {
        (Finite(a), Finite(b)) => star_listing(&a, &b, length, bound),
        (Finite(a), Free(b)) => star_listing(&a, &b, length, bound),
        (Free(a), Finite(b)) => star_listing(&a, &b, length, bound),
        (Free(a), Free(b)) => star_listing(&a, &b, length, bound),
    };
    Ok(Output::ok(text))
}

fn describe_completion(s: &SegCompletion) -> String {
    let mut out = String::new();
    writeln!(out, "objects {}", s.objects()).expect("string write");
    writeln!(out, "generators {}", s.generators().len()).expect("string write");
    writeln!(out, "relations {}", s.relations().len()).expect("string write");
    writeln!(out, "classes {}", s.num_classes()).expect("string write");
    writeln!(out, "stabilized {}", s.stabilized()).expect("string write");
    for c in 0..s.num_classes() {
        let p = s.representative(c);
        let body = if p.is_empty() {
            format!("id{}", p.src)
        } else {
            p.gens.iter().map(|g| format!("g{g}")).collect::<Vec<_>>().join(" ")
        };
        writeln!(out, "class {c} {}->{} {body}", p.src, p.tgt).expect("string write");
    }
    out
}

fn cmd_seg(monoid: Option<&str>, free_wedge: Option<usize>, budget: usize, levels: usize) -> Result<Output, CliError> {
    if levels < 2 {
        return Err(user("--levels must be at least 2"));
    }
    match (monoid, free_wedge) {
        (Some(spec), None) => {
            let MonoidSpec::Finite(m) = parse_monoid(spec)? else {
                return Err(user("--monoid needs a finite monoid; use --free-wedge for free ones"));
            };
            let x = FiniteCategory::from_monoid(&m).nerve(levels);
            let s = seg_complete(&x, budget).map_err(user)?;
            let mut out = describe_completion(&s);
            writeln!(out, "unit-isomorphism {}", s.unit_is_isomorphism(&x)).expect("string write");
            Ok(Output::ok(out))
        }
        (None, Some(len)) => {
            let f = free_monoid_nerve(1, len, levels);
            let x = wedge(&f, &f).map_err(|e| CliError::Internal(e.to_string()))?;
            let s = seg_complete(&x, budget).map_err(user)?;
            Ok(Output::ok(describe_completion(&s)))
        }
        _ => Err(user("give exactly one of --monoid or --free-wedge")),
    }
}

fn parse_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| user(format!("bad number `{}`", t.trim()))))
        .collect()
}

fn cmd_phi(target: usize, values: &str, subset: Option<&str>) -> Result<Output, CliError> {
    let phi = MonotoneMap::new(target, parse_list(values)?).map_err(user)?;
    let subsets = match subset {
        Some(s) => match parse_list(s)?.as_slice() {
            [lo, hi] => vec![ConvexSubset::new(*lo, *hi, target).map_err(user)?],
            _ => return Err(user("--subset takes `lo,hi`")),
        },
        None => ConvexSubset::all(target),
    };
    let mut out = String::new();
    writeln!(out, "phi {phi}").expect("string write");
    for c in subsets {
        let h = phi_hull(&phi, &c).map_err(|e| CliError::Internal(e.to_string()))?;
        writeln!(out, "{c} -> {h}").expect("string write");
    }
    Ok(Output::ok(out))
}

/// Run one command; `stdin` is read only when the input names no file.
pub fn run_command(config: &CommandConfig, stdin: &mut dyn Read) -> Result<Output, CliError> {
    match &config.command {
        Command::Validate(input) => {
            let (d, dim) = load(config, input, stdin)?;
            Ok(cmd_validate(&d, dim))
        }
        Command::Normalize(input) => {
            let (d, dim) = load(config, input, stdin)?;
            cmd_normalize(&d, dim)
        }
        Command::Eval(input) => {
            let (d, dim) = load(config, input, stdin)?;
            require_valid(&d, dim)?;
            let datum = load_datum(config.datum.as_deref().unwrap_or("kauffman"))?;
            let report = datum.validate(dim);
            if !report.is_valid() {
                return Err(user(format!(
                    "datum fails for dimension {}: {}",
                    dim.n(),
                    report.failures().join("; ")
                )));
            }
            let text = match &datum {
                AnyDatum::Integer(x) => write_value(&d, x)?,
                AnyDatum::Rational(x) => write_value(&d, x)?,
                AnyDatum::Laurent(x) => write_value(&d, x)?,
            };
            Ok(Output::ok(text))
        }
        Command::Invariant(input) => {
            let (d, dim) = load(config, input, stdin)?;
            require_valid(&d, dim)?;
            cmd_invariant(&d)
        }
        Command::Words {
            command: WordsCommand::Factor { word },
        } => Ok(cmd_factor(word)),
        Command::Star {
            command:
                StarCommand::Enum {
                    left,
                    right,
                    length,
                    bound,
                },
        } => cmd_star(left, right, *length, *bound),
        Command::Seg {
            command:
                SegCommand::Complete {
                    monoid,
                    free_wedge,
                    budget,
                    levels,
                },
        } => cmd_seg(monoid.as_deref(), *free_wedge, *budget, *levels),
        Command::Simplex {
            command: SimplexCommand::Phi { target, values, subset },
        } => cmd_phi(*target, values, subset.as_deref()),
    }
}
