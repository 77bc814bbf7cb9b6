use std::fs;
use std::io::{self, Read, Write};
use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilpair::catalog::{classify_with_limit, count_orbits_with_limit, export, CountMode, ExportFormat};
use nilpair::centralizer::analyze;
use nilpair::liealg::{build_pair, verify_relations, OrbitSign, PairRealization};
use nilpair::matrix::MatrixFormat;
use nilpair::skewgraph::{
    enumerate_admissible_with_limit, enumerate_connected_with_limit, parse_graph_json, parse_graphs_text,
    render_ascii, to_text, validate, SkewGraph, DEFAULT_MAX_NODES,
};
use nilpair::{graph_from_pair, PairKind, Series};

#[derive(Parser)]
#[command(name = "nilpair", version, about = "Distinguished and principal nilpotent pairs in classical Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List connected skew-graphs with N nodes, or the admissible graphs of an algebra.
    Enumerate {
        /// Node count for connected enumeration.
        n: Option<usize>,
        #[arg(long, requires = "dimv")]
        series: Option<Series>,
        #[arg(long, requires = "series")]
        dimv: Option<usize>,
        #[arg(long, default_value = "distinguished")]
        kind: PairKind,
        #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
        format: GraphFormat,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build the model pair of a graph and print it as JSON.
    Build {
        #[arg(long)]
        series: Series,
        /// Graph file in text or JSON form; `-` reads standard input.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        orbit_sign: Option<SignArg>,
        #[arg(long, value_enum, default_value_t = MatrixArg::Dense)]
        matrices: MatrixArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the relations of a pair and analyze its centralizer.
    Verify {
        /// Realization JSON as written by `build`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Include centralizer basis matrices in JSON output.
        #[arg(long, value_enum)]
        matrices: Option<MatrixArg>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify all orbits for an algebra.
    Classify {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = TableFormat::TextTable)]
        format: TableFormat,
        #[arg(long, value_enum)]
        matrices: Option<MatrixArg>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Count orbits for an algebra.
    Count {
        #[command(flatten)]
        target: Target,
        /// Build and verify every orbit instead of counting graphs.
        #[arg(long)]
        full: bool,
    },
    /// Write a classification table to a file.
    Export {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        #[arg(long, value_enum)]
        matrices: Option<MatrixArg>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Draw graphs as ASCII art and report axiom violations.
    Render {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long)]
    series: Series,
    #[arg(long)]
    dimv: usize,
    #[arg(long, default_value = "distinguished")]
    kind: PairKind,
    #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Text,
    Json,
    Ascii,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
    TextTable,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixArg {
    Dense,
    Sparse,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<MatrixArg> for MatrixFormat {
    fn from(m: MatrixArg) -> Self {
        match m {
            MatrixArg::Dense => MatrixFormat::Dense,
            MatrixArg::Sparse => MatrixFormat::Sparse,
        }
    }
}

impl From<TableFormat> for ExportFormat {
    fn from(f: TableFormat) -> Self {
        match f {
            TableFormat::Json => ExportFormat::Json,
            TableFormat::Csv => ExportFormat::Csv,
            TableFormat::TextTable => ExportFormat::TextTable,
        }
    }
}

enum Failure {
    Usage(String),
    Finding(String),
}

impl From<nilpair::Error> for Failure {
    fn from(e: nilpair::Error) -> Self {
        Failure::Finding(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Finding(format!("i/o error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Finding(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Finding(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn parse_graphs(text: &str) -> Result<Vec<SkewGraph>, Failure> {
    if text.trim_start().starts_with('{') {
        Ok(vec![parse_graph_json(text)?])
    } else {
        Ok(parse_graphs_text(text)?)
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

fn enumerate(
    n: Option<usize>,
    series: Option<Series>,
    dimv: Option<usize>,
    kind: PairKind,
    format: GraphFormat,
    max_nodes: usize,
    output: Option<&Path>,
) -> Outcome {
    let graphs = match (n, series, dimv) {
        (Some(n), None, None) => enumerate_connected_with_limit(n, max_nodes)?,
        (None, Some(s), Some(d)) => enumerate_admissible_with_limit(s, d, kind, max_nodes)?,
        _ => return Err(Failure::Usage("give either N or --series with --dimv".into())),
    };
    let text = match format {
        GraphFormat::Json => json(&graphs),
        GraphFormat::Text => graphs.iter().map(to_text).collect::<Vec<_>>().join("\n"),
        GraphFormat::Ascii => graphs.iter().map(render_ascii).collect::<Vec<_>>().join("\n"),
    };
    write_output(output, &text)
}

fn build(series: Series, input: &Path, sign: Option<SignArg>, matrices: MatrixArg, output: Option<&Path>) -> Outcome {
    let graphs = parse_graphs(&read_input(input)?)?;
    let [graph] = graphs.as_slice() else {
        return Err(Failure::Finding(format!("expected one graph, found {}", graphs.len())));
    };
    let sign = sign.map(|s| match s {
        SignArg::Plus => OrbitSign::Plus,
        SignArg::Minus => OrbitSign::Minus,
    });
    let r = build_pair(series, graph, sign)?;
    let mut text = r.to_json_string(matrices.into());
    text.push('\n');
    write_output(output, &text)
}

fn verify_text(r: &PairRealization, matrices: Option<MatrixArg>, format: ReportFormat) -> Result<(String, bool), Failure> {
    let relations = verify_relations(r);
    let ok = relations.all_passed();
    let analysis = if ok { Some(analyze(r)) } else { None };
    let graph = graph_from_pair(&r.spec, &r.e1, &r.e2, &r.h1, &r.h2);
    let failed = !ok || matches!(analysis, Some(Err(_)));
    let text = match format {
        ReportFormat::Json => {
            let report = match &analysis {
                Some(Ok(rep)) => serde_json::to_value(rep.to_json(matrices.map(Into::into))).expect("serializable"),
                Some(Err(e)) => serde_json::json!({ "error": e.to_string() }),
                None => serde_json::Value::Null,
            };
            json(&serde_json::json!({
                "relations": relations.checks,
                "report": report,
                "graph": graph.as_ref().ok().map(to_text),
            }))
        }
        ReportFormat::Text => {
            let mut out = relations.to_string();
            match &analysis {
                Some(Ok(rep)) => {
                    let f = &rep.flags;
                    out.push_str(&format!("dim z(e)                     {} (rank {})\n", rep.dimension, rep.rank));
                    out.push_str(&format!("dim z(h)                     {}\n", rep.h_centralizer_dimension));
                    let degrees: Vec<String> = rep
                        .biexponents
                        .iter()
                        .map(|(p, q)| format!("({},{})", nilpair::rational::format_rational(p), nilpair::rational::format_rational(q)))
                        .collect();
                    out.push_str(&format!("bi-exponents                 {}\n", degrees.join(" ")));
                    for (name, value) in [
                        ("cartan_h", f.cartan_h),
                        ("trivial_intersection", f.trivial_intersection),
                        ("distinguished", f.distinguished),
                        ("principal", f.principal),
                        ("rectangular", f.rectangular),
                    ] {
                        out.push_str(&format!("{name:<28} {value}\n"));
                    }
                }
                Some(Err(e)) => out.push_str(&format!("analysis failed: {e}\n")),
                None => {}
            }
            if let Ok(g) = &graph {
                out.push_str(&format!("graph                        {}", to_text(g)));
            }
            out
        }
    };
    Ok((text, failed))
}

fn verify(input: &Path, format: ReportFormat, matrices: Option<MatrixArg>, output: Option<&Path>) -> Outcome {
    let r = PairRealization::from_json_str(&read_input(input)?)?;
    // Hostile inputs can push exact arithmetic past 128 bits, which panics.
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let result = panic::catch_unwind(|| verify_text(&r, matrices, format));
    panic::set_hook(hook);
    let (text, failed) = result.map_err(|_| Failure::Finding("arithmetic range exceeded".into()))??;
    write_output(output, &text)?;
    if failed {
        Err(Failure::Finding("verification failed".into()))
    } else {
        Ok(())
    }
}

fn table(target: &Target, format: TableFormat, matrices: Option<MatrixArg>) -> Result<Vec<u8>, Failure> {
    let entries = classify_with_limit(target.series, target.dimv, target.kind, target.max_nodes)?;
    let mut buf = Vec::new();
    export(&entries, format.into(), matrices.map(Into::into), &mut buf)?;
    Ok(buf)
}

fn render(input: &Path) -> Outcome {
    let graphs = parse_graphs(&read_input(input)?)?;
    let mut out = String::new();
    let mut invalid = 0;
    for (i, g) in graphs.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&render_ascii(g));
        let report = validate(g);
        if !report.is_valid() {
            invalid += 1;
            out.push_str(&report.to_string());
            if !out.ends_with('\n') {
                out.push('\n');
            }
        }
    }
    write_output(None, &out)?;
    if invalid > 0 {
        Err(Failure::Finding(format!("{invalid} of {} graphs violate the axioms", graphs.len())))
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Enumerate { n, series, dimv, kind, format, max_nodes, output } => {
            enumerate(n, series, dimv, kind, format, max_nodes, output.as_deref())
        }
        Command::Build { series, input, orbit_sign, matrices, output } => {
            build(series, &input, orbit_sign, matrices, output.as_deref())
        }
        Command::Verify { input, format, matrices, output } => verify(&input, format, matrices, output.as_deref()),
        Command::Classify { target, format, matrices, output } => {
            let buf = table(&target, format, matrices)?;
            write_output(output.as_deref(), &String::from_utf8_lossy(&buf))
        }
        Command::Count { target, full } => {
            let mode = if full { CountMode::Full } else { CountMode::Fast };
            let n = count_orbits_with_limit(target.series, target.dimv, target.kind, mode, target.max_nodes)?;
            write_output(None, &format!("{n}\n"))
        }
        Command::Export { target, format, matrices, output } => {
            let buf = table(&target, format, matrices)?;
            write_output(Some(&output), &String::from_utf8_lossy(&buf))
        }
        Command::Render { input } => render(&input),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Finding(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
