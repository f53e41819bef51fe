use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use repmeasures::core::{
    build_rlslp, collage_to_scheme, greedy_ordered, lex_parse, lz_parse, lz_to_collage,
    min_ordered_parse, smallest_bidirectional, smallest_rotation, validate, validate_with_order,
    FamilySpec, SearchBudget, SuffixContext, Text,
};
use repmeasures::formats::{self, dump_sa};
use repmeasures::report::{self, Format, MeasureOptions};
use repmeasures::{
    family_file_bytes, family_name, generate, load_text, read_string, write_file, Error, Result,
};

#[derive(Parser)]
#[command(
    name = "repmeasures",
    version,
    about = "Repetitiveness measures, parses, grammars and collage systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a member of a text family as raw bytes, without the sentinel.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long)]
        sigma: Option<u32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a scheme file against a text.
    Validate {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        text: PathBuf,
        /// Also check the ordered-parse condition under an order file.
        #[arg(long)]
        order_file: Option<PathBuf>,
    },
    /// Parse a text and write the scheme.
    Parse {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long, required_if_eq("method", "order"))]
        order_file: Option<PathBuf>,
        #[arg(long)]
        text: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a run-length grammar, or expand one.
    Grammar {
        #[arg(long, requires = "text", requires = "out", conflicts_with = "expand")]
        build: bool,
        #[arg(long, value_name = "PATH")]
        expand: Option<PathBuf>,
        #[arg(long)]
        text: Option<PathBuf>,
        /// Output path; expansions go to stdout without it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a collage system from the Lempel-Ziv parse, or turn one into a scheme.
    Collage {
        #[arg(
            long,
            requires = "text",
            requires = "out",
            conflicts_with = "to_scheme"
        )]
        from_lz: bool,
        /// Collage file to convert.
        #[arg(long, value_name = "PATH")]
        to_scheme: Option<PathBuf>,
        /// The text; for --to-scheme it defaults to the system's expansion.
        #[arg(long)]
        text: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force oracles for small inputs.
    Oracle {
        #[arg(long, value_enum)]
        op: OracleOp,
        #[arg(long)]
        text: PathBuf,
        /// Order for minparse.
        #[arg(long, value_enum, default_value_t = OrderArg::Lex)]
        order: OrderArg,
        #[arg(long)]
        max_n: Option<usize>,
        /// Wall-clock limit in seconds for the scheme search.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Compute measures for files or family sweeps.
    Measure(MeasureArgs),
}

#[derive(Args)]
struct MeasureArgs {
    /// Also build the grammar and collage witnesses.
    #[arg(long)]
    deep: bool,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Report n without the sentinel.
    #[arg(long = "paper-n")]
    exclude_sentinel: bool,
    /// Print the suffix structures of a single input as TSV instead.
    #[arg(long)]
    dump_sa: bool,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Order, or an inclusive range `a..b`.
    #[arg(long, requires = "family")]
    k: Option<String>,
    /// Alphabet size, or an inclusive range `a..b`.
    #[arg(long, requires = "family")]
    sigma: Option<String>,
    /// Step for the ranges.
    #[arg(long, default_value_t = 1, requires = "family")]
    step: u32,
    paths: Vec<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Fib,
    FibAlt,
    Debruijn,
    Lemma35,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Lz,
    Lzno,
    Lex,
    Order,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleOp {
    B,
    Minparse,
    Rotation,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Pos,
}

fn spec_for(family: FamilyArg, k: u32, sigma: Option<u32>) -> FamilySpec {
    match family {
        FamilyArg::Fib => FamilySpec::fibonacci(k),
        FamilyArg::FibAlt => FamilySpec::fibonacci_alt(k),
        FamilyArg::Debruijn => FamilySpec::de_bruijn(k, sigma.unwrap_or(2)),
        FamilyArg::Lemma35 => FamilySpec::lemma35(sigma.unwrap_or(k)),
    }
}

fn parse_range(s: &str, step: u32) -> Result<Vec<u32>> {
    let bad = || Error::Usage(format!("bad range `{s}`; expected an integer or `a..b`"));
    if step == 0 {
        return Err(Error::Usage("--step must be positive".into()));
    }
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).step_by(step as usize).collect())
}

fn ctx_name(p: &Path) -> String {
    p.display().to_string()
}

fn cmd_generate(family: FamilyArg, k: u32, sigma: Option<u32>, out: &Path) -> Result<()> {
    let spec = spec_for(family, k, sigma);
    let t = generate(&spec)?;
    write_file(out, &family_file_bytes(&spec, &t))
}

fn cmd_validate(scheme: &Path, text: &Path, order_file: Option<&Path>) -> Result<bool> {
    let t = load_text(text)?;
    let s = formats::parse_scheme(&read_string(scheme)?, &ctx_name(scheme))?;
    let rep = match order_file {
        Some(o) => validate_with_order(
            &s,
            &t,
            &formats::parse_order(&read_string(o)?, t.len(), &ctx_name(o))?,
        ),
        None => validate(&s, &t),
    };
    let yn = |b: bool| if b { "yes" } else { "no" };
    println!("phrases: {}", s.len());
    println!("covers: {}", yn(rep.covers));
    println!("contents_match: {}", yn(rep.contents_match));
    println!("acyclic: {}", yn(rep.acyclic));
    if let Some(o) = rep.ordered_under {
        println!("ordered: {}", yn(o));
    }
    if let Some(v) = &rep.first_violation {
        println!("first_violation: position {}: {}", v.position + 1, v.reason);
    }
    let ok = rep.valid() && rep.ordered_under.unwrap_or(true);
    println!("{}", if ok { "valid" } else { "invalid" });
    Ok(ok)
}

fn cmd_parse(method: MethodArg, order_file: Option<&Path>, text: &Path, out: &Path) -> Result<()> {
    let t = load_text(text)?;
    let ctx = SuffixContext::new(t.clone());
    let parse = match method {
        MethodArg::Lz => lz_parse(&ctx, true),
        MethodArg::Lzno => lz_parse(&ctx, false),
        MethodArg::Lex => lex_parse(&ctx),
        MethodArg::Order => {
            let o = order_file.expect("clap enforces --order-file");
            let io = formats::parse_order(&read_string(o)?, t.len(), &ctx_name(o))?;
            greedy_ordered(&ctx, &io).map_err(|e| Error::core(ctx_name(o), e))?
        }
    };
    eprintln!("{} phrases", parse.phrase_count());
    write_file(out, formats::write_scheme(&parse.scheme).as_bytes())
}

fn write_or_stdout(out: Option<&Path>, data: &[u8]) -> Result<()> {
    match out {
        Some(p) => write_file(p, data),
        None => std::io::stdout()
            .write_all(data)
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn cmd_grammar(
    build: bool,
    expand: Option<&Path>,
    text: Option<&Path>,
    out: Option<&Path>,
) -> Result<()> {
    if build {
        let t = load_text(text.unwrap())?;
        let g = build_rlslp(&t);
        eprintln!("{} rules", g.size());
        return write_file(out.unwrap(), formats::write_grammar(&g).as_bytes());
    }
    let Some(path) = expand else {
        return Err(Error::Usage(
            "grammar needs --build or --expand <path>".into(),
        ));
    };
    let name = ctx_name(path);
    let g = formats::parse_grammar(&read_string(path)?, &name)?;
    let t = g.expand().map_err(|e| Error::core(&name, e))?;
    write_or_stdout(out, t.raw())
}

fn cmd_collage(
    from_lz: bool,
    to_scheme: Option<&Path>,
    text: Option<&Path>,
    out: Option<&Path>,
) -> Result<()> {
    if from_lz {
        let text = text.unwrap();
        let t = load_text(text)?;
        let z = lz_parse(&SuffixContext::new(t.clone()), true);
        let c = lz_to_collage(&z, &t).map_err(|e| Error::core(ctx_name(text), e))?;
        eprintln!("{} rules from {} phrases", c.size(), z.phrase_count());
        return write_file(out.unwrap(), formats::write_collage(&c).as_bytes());
    }
    let Some(path) = to_scheme else {
        return Err(Error::Usage(
            "collage needs --from-lz or --to-scheme <path>".into(),
        ));
    };
    let name = ctx_name(path);
    let c = formats::parse_collage(&read_string(path)?, &name)?;
    let t = match text {
        Some(p) => load_text(p)?,
        None => c.expand().map_err(|e| Error::core(&name, e))?,
    };
    let s = collage_to_scheme(&c, &t).map_err(|e| Error::core(&name, e))?;
    eprintln!("{} phrases from {} rules", s.len(), c.size());
    write_or_stdout(out, formats::write_scheme(&s).as_bytes())
}

fn cmd_oracle(
    op: OracleOp,
    text: &Path,
    order: OrderArg,
    max_n: Option<usize>,
    timeout: Option<f64>,
) -> Result<()> {
    let name = ctx_name(text);
    let deadline = timeout.map(|s| Instant::now() + Duration::from_secs_f64(s));
    let expired = move || deadline.is_some_and(|d| Instant::now() >= d);
    match op {
        OracleOp::B => {
            let t = load_text(text)?;
            let mut budget = SearchBudget::new(max_n.unwrap_or(SearchBudget::SCHEME_SEARCH_N));
            budget = budget.with_abort(&expired);
            let (b, w) = smallest_bidirectional(&t, budget).map_err(|e| Error::core(&name, e))?;
            println!("b={b}");
            print!("{}", formats::write_scheme(&w));
        }
        OracleOp::Minparse => {
            let t = load_text(text)?;
            let budget =
                SearchBudget::new(max_n.unwrap_or(SearchBudget::NAIVE_SA_N)).with_abort(&expired);
            let count = match order {
                OrderArg::Lex => {
                    let ctx = SuffixContext::new(t.clone());
                    let isa = ctx.isa();
                    min_ordered_parse(&t, |a, b| isa[a] < isa[b], budget)
                }
                OrderArg::Pos => min_ordered_parse(&t, |a, b| a < b, budget),
            }
            .map_err(|e| Error::core(&name, e))?;
            println!("{count}");
        }
        OracleOp::Rotation => {
            let raw = repmeasures::read_file(text)?;
            let p = smallest_rotation(&raw).map_err(|e| Error::core(&name, e))?;
            println!("{}", p + 1);
        }
    }
    Ok(())
}

fn cmd_measure(args: MeasureArgs) -> Result<()> {
    let mut inputs: Vec<(String, Input)> = Vec::new();
    if let Some(family) = args.family {
        let ks = match &args.k {
            Some(k) => parse_range(k, args.step)?,
            None => vec![0],
        };
        let sigmas = match &args.sigma {
            Some(s) => parse_range(s, args.step)?.into_iter().map(Some).collect(),
            None => vec![None],
        };
        for &k in &ks {
            for &sigma in &sigmas {
                let spec = spec_for(family, k, sigma);
                inputs.push((family_name(&spec), Input::Family(spec)));
            }
        }
    }
    for p in &args.paths {
        inputs.push((ctx_name(p), Input::File(p.clone())));
    }
    if inputs.is_empty() {
        return Err(Error::Usage(
            "measure needs at least one path or --family".into(),
        ));
    }
    if args.dump_sa {
        if inputs.len() != 1 {
            return Err(Error::Usage("--dump-sa takes exactly one input".into()));
        }
        let t = inputs[0].1.load()?;
        return write_or_stdout(None, dump_sa(&SuffixContext::new(t)).as_bytes());
    }
    let opts = MeasureOptions {
        deep: args.deep,
        exclude_sentinel: args.exclude_sentinel,
    };
    let results: Vec<Result<report::MeasureReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = inputs
            .iter()
            .map(|(name, input)| s.spawn(move || report::measures(name, &input.load()?, opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("measure worker panicked"))
            .collect()
    });
    let reports = results.into_iter().collect::<Result<Vec<_>>>()?;
    write_or_stdout(None, report::render(args.format, &reports).as_bytes())
}

enum Input {
    File(PathBuf),
    Family(FamilySpec),
}

impl Input {
    fn load(&self) -> Result<Text> {
        match self {
            Input::File(p) => load_text(p),
            Input::Family(spec) => generate(spec),
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate {
            family,
            k,
            sigma,
            out,
        } => cmd_generate(family, k, sigma, &out)?,
        Command::Validate {
            scheme,
            text,
            order_file,
        } => {
            if !cmd_validate(&scheme, &text, order_file.as_deref())? {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Parse {
            method,
            order_file,
            text,
            out,
        } => cmd_parse(method, order_file.as_deref(), &text, &out)?,
        Command::Grammar {
            build,
            expand,
            text,
            out,
        } => cmd_grammar(build, expand.as_deref(), text.as_deref(), out.as_deref())?,
        Command::Collage {
            from_lz,
            to_scheme,
            text,
            out,
        } => cmd_collage(
            from_lz,
            to_scheme.as_deref(),
            text.as_deref(),
            out.as_deref(),
        )?,
        Command::Oracle {
            op,
            text,
            order,
            max_n,
            timeout,
        } => cmd_oracle(op, &text, order, max_n, timeout)?,
        Command::Measure(args) => cmd_measure(args)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
