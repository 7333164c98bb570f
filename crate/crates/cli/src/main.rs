mod input;

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orthospace::enumerate::{
    for_each_batch, tally_range, write_graph6, CensusFilter, Predicate, TableId, TableReport,
    ENUMERATION_BOUND,
};
use orthospace::lattice::{lattice_cap_from_env, ClosureLattice};
use orthospace::properties::{classify_rank2, classify_rank3, full_report, PropertyReport, Witness};
use orthospace::{OrthoSpace, SpaceDescription};

use input::{load, Loaded, Source};

const SCHEMA: u32 = 1;
/// Largest table size without `--extended`.
const DEFAULT_TABLE_LIMIT: usize = 9;
const EXTENDED_TABLE_LIMIT: usize = 10;

#[derive(Parser)]
#[command(name = "orthospace", version, about = "Finite orthogonality spaces: checks, census and lattices")]
struct Cli {
    /// Worker threads for the census (defaults to all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every property of a space
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Recompute a census table and compare it with the reference values
    Tables {
        /// I, II or III
        table: TableId,
        #[arg(long, default_value_t = DEFAULT_TABLE_LIMIT)]
        n_max: usize,
        /// Allow n-max = 10
        #[arg(long)]
        extended: bool,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// List one space per isomorphism class as graph6
    Enumerate {
        n: usize,
        #[arg(long, default_value = "all")]
        filter: Predicate,
        /// Only connected spaces
        #[arg(long)]
        connected: bool,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Recognize the rank-2 and rank-3 normal forms
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Closure lattice summary and Hasse diagram
    Lattice {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// File with graph6 lines or a JSON description
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline graph6 string
    #[arg(long)]
    g6: Option<String>,
    /// Inline JSON: {"n":..,"edges":[[i,j],..]}, {"n":..,"cliques":[..]} or [[i,j],..]
    #[arg(long)]
    edges: Option<String>,
}

impl InputArgs {
    fn source(&self) -> Source {
        match (&self.input, &self.g6, &self.edges) {
            (Some(p), _, _) => Source::File(p.clone()),
            (_, Some(g), _) => Source::Graph6(g.clone()),
            (_, _, Some(e)) => Source::Edges(e.clone()),
            _ => unreachable!("clap enforces one input"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
    Dot,
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match &cli.command {
        Command::Check { input, format } => cmd_check(&mut out, input, *format),
        Command::Tables { table, n_max, extended, format } => {
            cmd_tables(&mut out, *table, *n_max, *extended, *format)
        }
        Command::Enumerate { n, filter, connected, format } => {
            cmd_enumerate(&mut out, *n, CensusFilter::new(*filter, *connected), *format)
        }
        Command::Classify { input, format } => cmd_classify(&mut out, input, *format),
        Command::Lattice { input, format } => cmd_lattice(&mut out, input, *format),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(Failure::Mismatch), _) => ExitCode::from(1),
        (Err(Failure::Usage(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Ok(()), Err(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        (Ok(()), Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_input(input: &InputArgs) -> Result<Vec<Loaded>, Failure> {
    load(&input.source()).map_err(|e| Failure::Usage(e.0))
}

fn reject_format(format: Format, allowed: &[Format], cmd: &str) -> CmdResult {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("{cmd} does not support this --format")))
    }
}

fn with_schema(mut value: Value) -> Value {
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), json!(SCHEMA));
    }
    value
}

fn print_json(out: &mut impl Write, value: &Value) -> CmdResult {
    serde_json::to_writer(&mut *out, value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn cmd_check(out: &mut impl Write, input: &InputArgs, format: Format) -> CmdResult {
    reject_format(format, &[Format::Human, Format::Json], "check")?;
    for loaded in load_input(input)? {
        let report = full_report(&loaded.space);
        match format {
            Format::Json => {
                let mut value = serde_json::to_value(&report).expect("report serializes");
                value["input"] = json!(loaded.label);
                print_json(out, &with_schema(value))?;
            }
            _ => write_report(out, &loaded.label, &report)?,
        }
    }
    Ok(())
}

fn verdict(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_report(out: &mut impl Write, label: &str, r: &PropertyReport) -> io::Result<()> {
    let unknown = |v: Option<bool>| v.map_or("unknown (lattice cap)", verdict);
    writeln!(out, "space {label}")?;
    writeln!(out, "  points               {}", r.n)?;
    writeln!(out, "  rank                 {}", r.rank)?;
    writeln!(out, "  connected            {}", verdict(r.connected))?;
    match r.diameter {
        Some(d) => writeln!(out, "  diameter             {d}")?,
        None => writeln!(out, "  diameter             undefined")?,
    }
    writeln!(out, "  (L1)                 {}", verdict(r.l1))?;
    writeln!(out, "  (L2)                 {}", verdict(r.l2))?;
    writeln!(out, "  linear               {}", verdict(r.linear))?;
    writeln!(out, "  irredundant          {}", verdict(r.irredundant))?;
    writeln!(out, "  strongly irredundant {}", verdict(r.strongly_irredundant))?;
    writeln!(out, "  irreducible          {}", verdict(r.irreducible))?;
    writeln!(out, "  Dacey                {}", unknown(r.dacey))?;
    match (r.mo_index, r.lattice_capped) {
        (Some(k), _) => writeln!(out, "  lattice              MO({k})")?,
        (None, true) => writeln!(out, "  lattice              unknown (lattice cap)")?,
        (None, false) => writeln!(out, "  lattice              not of the form MO(n)")?,
    }
    let class = serde_json::to_value(r.classification).expect("classification serializes");
    writeln!(out, "  classification       {}", class.as_str().unwrap_or_default())?;
    for w in &r.witnesses {
        writeln!(out, "  witness              {}", describe_witness(w))?;
    }
    Ok(())
}

fn describe_witness(w: &Witness) -> String {
    match *w {
        Witness::L1Fail { e, f } => format!("(L1) fails for e={e}, f={f}"),
        Witness::L2Fail { e, f } => format!("(L2) fails for e={e}, f={f}"),
        Witness::IrredundancyFail { a, b } => format!("{{{a}}}⊥ = {{{b}}}⊥"),
        Witness::StrongIrredundancyFail { a, b } => format!("{{{a}}}⊥ ⊆ {{{b}}}⊥"),
        Witness::DaceyFail { closed, maximal } => {
            format!("{maximal} is maximal orthogonal in {closed} but {maximal}⊥⊥ ≠ {closed}")
        }
        Witness::DifferenceSingleton { first, second } => {
            format!("maximal orthogonal sets {first} and {second} differ in one point")
        }
    }
}

fn cmd_tables(
    out: &mut impl Write,
    table: TableId,
    n_max: usize,
    extended: bool,
    format: Format,
) -> CmdResult {
    reject_format(format, &[Format::Human, Format::Json, Format::Csv], "tables")?;
    if n_max > EXTENDED_TABLE_LIMIT {
        return Err(Failure::Usage(format!(
            "--n-max {n_max}: reference values exist up to {EXTENDED_TABLE_LIMIT}"
        )));
    }
    if n_max > DEFAULT_TABLE_LIMIT && !extended {
        return Err(Failure::Usage(format!(
            "--n-max {n_max} needs --extended (the n = 10 census enumerates 12 million classes)"
        )));
    }
    let tallies = tally_range(n_max).map_err(|e| Failure::Usage(e.to_string()))?;
    let report = TableReport::from_tallies(table, &tallies);
    match format {
        Format::Json => {
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value["passed"] = json!(report.passed());
            print_json(out, &with_schema(value))?;
        }
        Format::Csv => {
            writeln!(out, "n,total,filtered,connected_total,connected_filtered")?;
            for row in &report.rows {
                let [a, b, c, d] = row.computed;
                writeln!(out, "{},{a},{b},{c},{d}", row.n)?;
            }
            eprintln!("{}", status_line(&report));
        }
        _ => {
            writeln!(out, "Table {table}")?;
            let [c0, c1, c2, c3] = report.columns;
            writeln!(out, "{:>3} {:>12} {:>12} {:>12} {:>16}", "n", c0, c1, c2, c3)?;
            for row in &report.rows {
                let [a, b, c, d] = row.computed;
                let flag = match row.expected {
                    Some(exp) if exp != row.computed => "  MISMATCH",
                    Some(_) => "",
                    None => "  (no reference)",
                };
                writeln!(out, "{:>3} {a:>12} {b:>12} {c:>12} {d:>16}{flag}", row.n)?;
            }
            writeln!(out, "{}", status_line(&report))?;
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn status_line(report: &TableReport) -> String {
    match &report.first_mismatch {
        None => format!("PASS: all {} rows match", report.rows.len()),
        Some(m) => format!(
            "FAIL: n={} column {} expected {} found {}",
            m.n, m.column, m.expected, m.found
        ),
    }
}

fn cmd_enumerate(out: &mut impl Write, n: usize, filter: CensusFilter, format: Format) -> CmdResult {
    reject_format(format, &[Format::Human, Format::Json], "enumerate")?;
    if !(1..=ENUMERATION_BOUND).contains(&n) {
        return Err(Failure::Usage(format!("n must lie in 1..={ENUMERATION_BOUND}, got {n}")));
    }
    let mut failed: Option<io::Error> = None;
    for_each_batch(n, 64, |batch: Vec<OrthoSpace>| {
        if failed.is_some() {
            return;
        }
        for space in batch.iter().filter(|s| filter.accepts(s)) {
            let line = write_graph6(space);
            let res = if format == Format::Json {
                let desc = SpaceDescription::from(space);
                let mut value = serde_json::to_value(&desc).expect("description serializes");
                value["graph6"] = json!(line);
                writeln!(out, "{}", with_schema(value))
            } else {
                writeln!(out, "{line}")
            };
            if let Err(e) = res {
                failed = Some(e);
                return;
            }
        }
    })
    .map_err(|e| Failure::Usage(e.to_string()))?;
    match failed {
        Some(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn cmd_classify(out: &mut impl Write, input: &InputArgs, format: Format) -> CmdResult {
    reject_format(format, &[Format::Human, Format::Json], "classify")?;
    for loaded in load_input(input)? {
        let space = &loaded.space;
        let (name, structure) = if let Some(m) = classify_rank2(space) {
            ("MATCHING_2ABPHI", serde_json::to_value(&m).expect("serializes"))
        } else if let Some(w) = classify_rank3(space) {
            ("WINDMILL_3ABPHI", serde_json::to_value(&w).expect("serializes"))
        } else {
            ("OTHER", Value::Null)
        };
        if format == Format::Json {
            let value = json!({
                "input": loaded.label,
                "classification": name,
                "structure": structure,
            });
            print_json(out, &with_schema(value))?;
            continue;
        }
        writeln!(out, "{} {name}", loaded.label)?;
        if let Some(w) = classify_rank3(space).filter(|_| name.starts_with("WINDMILL")) {
            writeln!(out, "  hub {}", w.hub)?;
            write_matching(out, &w.matching.phi, w.matching.a_side, w.matching.b_side)?;
        } else if let Some(m) = classify_rank2(space) {
            write_matching(out, &m.phi, m.a_side, m.b_side)?;
        }
    }
    Ok(())
}

fn write_matching(
    out: &mut impl Write,
    phi: &[(usize, usize)],
    a: orthospace::VertexSet,
    b: orthospace::VertexSet,
) -> io::Result<()> {
    writeln!(out, "  A {a}")?;
    writeln!(out, "  B {b}")?;
    let pairs: Vec<String> = phi.iter().map(|(x, y)| format!("{x}->{y}")).collect();
    writeln!(out, "  phi {}", pairs.join(" "))
}

fn cmd_lattice(out: &mut impl Write, input: &InputArgs, format: Format) -> CmdResult {
    reject_format(format, &[Format::Human, Format::Json, Format::Dot], "lattice")?;
    let cap = lattice_cap_from_env();
    for loaded in load_input(input)? {
        let lattice = ClosureLattice::of_space_with_cap(&loaded.space, cap)
            .map_err(|e| Failure::Usage(format!("{}: {e}", loaded.label)))?;
        let summary = lattice.summary();
        match format {
            Format::Json => {
                let value = json!({
                    "input": loaded.label,
                    "summary": summary,
                    "lattice": lattice.export(),
                });
                print_json(out, &with_schema(value))?;
            }
            Format::Dot => {
                writeln!(out, "// {}", loaded.label)?;
                let fields = serde_json::to_value(&summary).expect("summary serializes");
                if let Value::Object(map) = fields {
                    for (k, v) in map {
                        writeln!(out, "// {k}: {v}")?;
                    }
                }
                write!(out, "{}", lattice.to_dot())?;
            }
            _ => {
                writeln!(out, "lattice of {}", loaded.label)?;
                writeln!(out, "  elements     {}", summary.elements)?;
                writeln!(out, "  ortholattice {}", verdict(summary.ortholattice))?;
                let om = summary.orthomodular.map_or("n/a", verdict);
                writeln!(out, "  orthomodular {om}")?;
                writeln!(out, "  modular      {}", verdict(summary.modular))?;
                writeln!(out, "  atomistic    {}", verdict(summary.atomistic))?;
                writeln!(out, "  length       {}", summary.length)?;
                match summary.mo_index {
                    Some(k) => writeln!(out, "  shape        MO({k})")?,
                    None => writeln!(out, "  shape        not MO(n)")?,
                }
            }
        }
    }
    Ok(())
}
