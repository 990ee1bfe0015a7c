//! The `kgg` command line, as a library so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 a check failed (or elements differ, or a path is
//! outside the domain), 2 usage or input error, 3 undecided.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use kgraph::constructions::{bouquet_product, ckr, double_cover, Labelling};
use kgraph::group::DEFAULT_DEGREE_CAP;
use kgraph::homology::{evans_complex, h0_hk_shortcut, homology};
use kgraph::path::{format_path, parse_path};
use kgraph::structure::{simplicity_verdict, Simplicity};
use kgraph::table_file::TableDocument;
use kgraph::{parse_kgraph, serialize_kgraph, validate, Degree, Group, GroupElement, HomologyGroup, KGraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

/// What a command produced: an exit code and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "kgg", version, about = "Workbench for higher-rank graphs")]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest degree component a group computation may refine to.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: u32,
    /// Write the produced document to this file.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the squares of a k-graph document are complete and associative.
    Validate { file: PathBuf },
    /// Check the conditions for simplicity, up to bounds.
    Check {
        file: PathBuf,
        /// Degree bound for the pairs examined, e.g. `1,1`.
        #[arg(long)]
        pair_bound: Option<String>,
        /// Degree bound for the separating extensions, e.g. `2,2`.
        #[arg(long)]
        witness_bound: Option<String>,
    },
    /// Integer homology of the Evans complex.
    Homology {
        file: PathBuf,
        /// Only H_0 and H_k, from the coordinate matrices directly.
        #[arg(long)]
        shortcut: bool,
    },
    /// Generate an example k-graph document.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Arithmetic on group elements stored as table files.
    #[command(subcommand)]
    Group(GroupCommand),
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// One vertex with the given number of loops per colour.
    Nv(Sizes),
    /// Two-vertex double cover of a product of bouquets.
    Cover {
        #[command(flatten)]
        sizes: Sizes,
        /// `uniform`, `mixed`, or `explicit:<file>` with a JSON object
        /// mapping each symbol (`a1`, `b2`, …) to 0 or 1.
        #[arg(long, default_value = "uniform")]
        labelling: String,
    },
    /// The graph with R+1 vertices whose top homology is free of rank R.
    Ckr {
        #[arg(long)]
        k: usize,
        #[arg(long = "R", alias = "r")]
        r: usize,
    },
}

#[derive(Args, Debug)]
struct Sizes {
    #[arg(long)]
    k: usize,
    /// Comma-separated loop counts, one per colour.
    #[arg(long)]
    sizes: String,
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    /// Product `a·b` (apply b, then a).
    Mul { a: PathBuf, b: PathBuf },
    Inv { a: PathBuf },
    /// Exit 0 if the elements are equal, 1 otherwise.
    Eq { a: PathBuf, b: PathBuf },
    /// Image of a path (comma-separated edge names) under an element.
    Apply { a: PathBuf, path: String },
    /// Merge complete one-step families of pairs.
    Reduce { a: PathBuf },
    /// A seeded random element of the group of a k-graph document.
    Random {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        expansions: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    Uniform,
    Mixed,
}

/// An error carrying a stable machine-readable code.
#[derive(Debug)]
struct Coded {
    code: &'static str,
    message: String,
}

impl fmt::Display for Coded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl std::error::Error for Coded {}

fn coded(code: &'static str, message: impl fmt::Display) -> anyhow::Error {
    anyhow::Error::new(Coded {
        code,
        message: message.to_string(),
    })
}

struct Outcome {
    exit_code: i32,
    text: String,
    json: Value,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            exit_code: EXIT_OK,
            text,
            json,
        }
    }
}

pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let exit_code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            return CommandResult {
                exit_code,
                stdout,
                stderr,
            };
        }
    };
    let json = cli.json;
    match dispatch(&cli) {
        Ok(out) => CommandResult {
            exit_code: out.exit_code,
            stdout: if json {
                format!("{}\n", serde_json::to_string_pretty(&out.json).expect("valid json"))
            } else {
                out.text
            },
            stderr: String::new(),
        },
        Err(e) => {
            let code = e.downcast_ref::<Coded>().map_or("ERROR", |c| c.code);
            let message = format!("{e:#}");
            CommandResult {
                exit_code: EXIT_USAGE,
                stdout: if json {
                    let doc = json!({ "error": { "code": code, "message": message } });
                    format!("{}\n", serde_json::to_string_pretty(&doc).expect("valid json"))
                } else {
                    String::new()
                },
                stderr: format!("error: {message}\n"),
            }
        }
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Check {
            file,
            pair_bound,
            witness_bound,
        } => cmd_check(file, pair_bound.as_deref(), witness_bound.as_deref()),
        Command::Homology { file, shortcut } => cmd_homology(file, *shortcut),
        Command::Gen(gen) => cmd_gen(gen, cli.output.as_deref()),
        Command::Group(cmd) => cmd_group(cmd, cli),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| coded("IO", format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> anyhow::Result<KGraph> {
    let text = read(path)?;
    parse_kgraph(&text).map_err(|e| coded(e.code(), format!("{}: {e}", path.display())))
}

fn write_or_print(output: Option<&Path>, document: String, what: &str) -> anyhow::Result<Outcome> {
    match output {
        Some(path) => {
            fs::write(path, &document).map_err(|e| coded("IO", format!("{}: {e}", path.display())))?;
            Ok(Outcome::ok(
                format!("wrote {what} to {}\n", path.display()),
                json!({ "written": path.display().to_string() }),
            ))
        }
        None => {
            let json = serde_json::from_str(&document).expect("documents are JSON");
            Ok(Outcome::ok(document, json))
        }
    }
}

fn cmd_validate(file: &Path) -> anyhow::Result<Outcome> {
    let g = load_graph(file)?;
    let report = validate(&g);
    let mut text = String::new();
    let mut violations = Vec::new();
    for v in &report.violations {
        text.push_str(&format!("{} [{}] {}\n", v.code, v.edges.join(","), v.detail));
        violations.push(json!({ "code": v.code.as_str(), "edges": v.edges, "detail": v.detail }));
    }
    let passed = report.passed();
    text.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    Ok(Outcome {
        exit_code: if passed { EXIT_OK } else { EXIT_FAILED },
        text,
        json: json!({ "passed": passed, "violations": violations }),
    })
}

fn parse_degree(text: &str, k: usize, flag: &str) -> anyhow::Result<Degree> {
    let parts = text
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| coded("USAGE", format!("--{flag}: {e}")))?;
    if parts.len() != k {
        return Err(coded(
            "USAGE",
            format!("--{flag} needs {k} components, got {}", parts.len()),
        ));
    }
    Ok(Degree::from_vec(parts))
}

fn parse_sizes(text: &str, k: usize) -> anyhow::Result<Vec<usize>> {
    let sizes = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| coded("USAGE", format!("--sizes: {e}")))?;
    if k == 0 {
        bail!(coded("USAGE", "--k must be at least 1"));
    }
    if sizes.len() != k || sizes.contains(&0) {
        bail!(coded("USAGE", format!("--sizes needs {k} positive entries")));
    }
    Ok(sizes)
}

fn cmd_check(file: &Path, pair_bound: Option<&str>, witness_bound: Option<&str>) -> anyhow::Result<Outcome> {
    let g = load_graph(file)?;
    let k = g.rank();
    let pair_bound = match pair_bound {
        Some(t) => parse_degree(t, k, "pair-bound")?,
        None => Degree::splat(k, 1),
    };
    let witness_bound = match witness_bound {
        Some(t) => parse_degree(t, k, "witness-bound")?,
        None => Degree::splat(k, 2),
    };
    let report = simplicity_verdict(&g, &pair_bound, &witness_bound);
    let name = |v| g.vertex_name(v).to_string();

    let mut text = String::new();
    text.push_str(&format!("no sources: {}", report.sources.verdict));
    if let Some((v, c)) = report.sources.counterexample {
        text.push_str(&format!(" (vertex {} has no edge of colour {c})", name(v)));
    }
    text.push('\n');
    text.push_str(&format!("cofinality: {}", report.cofinality.verdict));
    if let Some((e, f)) = report.cofinality.counterexample {
        text.push_str(&format!(" (vertices {} and {})", name(e), name(f)));
    }
    text.push('\n');
    let ap = &report.aperiodicity;
    text.push_str(&format!(
        "aperiodicity: {} (pairs up to {}, witnesses up to {}; {} pairs, {} without witness)\n",
        ap.verdict,
        ap.pair_bound,
        ap.witness_bound,
        ap.pairs_examined,
        ap.unresolved.len()
    ));
    for (a, b) in ap.unresolved.iter().take(10) {
        text.push_str(&format!("  no witness: {} | {}\n", format_path(&g, a), format_path(&g, b)));
    }
    if ap.unresolved.len() > 10 {
        text.push_str(&format!("  ... {} more\n", ap.unresolved.len() - 10));
    }
    text.push_str(&format!("verdict: {}\n", report.verdict));
    let size = if report.infinite {
        "countably infinite"
    } else {
        "finite symmetric inverse monoid"
    };
    text.push_str(&format!("size: {size}\n"));

    let json = json!({
        "no_sources": {
            "verdict": report.sources.verdict.as_str(),
            "counterexample": report.sources.counterexample.map(|(v, c)| json!({"vertex": name(v), "color": c})),
        },
        "cofinality": {
            "verdict": report.cofinality.verdict.as_str(),
            "counterexample": report.cofinality.counterexample.map(|(e, f)| json!([name(e), name(f)])),
        },
        "aperiodicity": {
            "verdict": ap.verdict.as_str(),
            "pair_bound": ap.pair_bound.components(),
            "witness_bound": ap.witness_bound.components(),
            "pairs_examined": ap.pairs_examined,
            "unresolved": ap.unresolved.iter()
                .map(|(a, b)| json!([format_path(&g, a), format_path(&g, b)]))
                .collect::<Vec<_>>(),
        },
        "verdict": report.verdict.as_str(),
        "infinite": report.infinite,
    });
    let exit_code = match report.verdict {
        Simplicity::Simple => EXIT_OK,
        Simplicity::NotDecided => EXIT_UNDECIDED,
        Simplicity::Fails => EXIT_FAILED,
    };
    Ok(Outcome {
        exit_code,
        text,
        json,
    })
}

fn homology_json(p: usize, h: &HomologyGroup) -> Value {
    json!({
        "degree": p,
        "free_rank": h.free_rank,
        "torsion": h.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn cmd_homology(file: &Path, shortcut: bool) -> anyhow::Result<Outcome> {
    let g = load_graph(file)?;
    let report = validate(&g);
    if !report.passed() {
        let first = &report.violations[0];
        bail!(coded("INVALID_GRAPH", format!("{}: {}", first.code, first.detail)));
    }
    let groups: Vec<(usize, HomologyGroup)> = if shortcut {
        let (h0, hk) = h0_hk_shortcut(&g);
        vec![(0, h0), (g.rank(), hk)]
    } else {
        let cx = evans_complex(&g).map_err(|e| coded(e.code(), e))?;
        homology(&cx).into_iter().enumerate().collect()
    };
    let mut text = String::new();
    for (p, h) in &groups {
        text.push_str(&format!("H_{p} = {h}\n"));
    }
    let json = json!({
        "homology": groups.iter().map(|(p, h)| homology_json(*p, h)).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(text, json))
}

fn load_labelling(choice: &str, sizes: &[usize]) -> anyhow::Result<Labelling> {
    if let Some(file) = choice.strip_prefix("explicit:") {
        let text = read(Path::new(file))?;
        let map: BTreeMap<String, u8> =
            serde_json::from_str(&text).map_err(|e| coded("SYNTAX", format!("{file}: {e}")))?;
        return Labelling::explicit(sizes, &map).map_err(|e| coded("LABELLING", e));
    }
    match Preset::from_str(choice, true) {
        Ok(Preset::Uniform) => Ok(Labelling::uniform(sizes)),
        Ok(Preset::Mixed) => Ok(Labelling::mixed(sizes)),
        Err(_) => Err(coded(
            "USAGE",
            format!("unknown labelling `{choice}` (uniform, mixed, explicit:<file>)"),
        )),
    }
}

fn cmd_gen(gen: &GenCommand, output: Option<&Path>) -> anyhow::Result<Outcome> {
    let g = match gen {
        GenCommand::Nv(s) => bouquet_product(s.k, &parse_sizes(&s.sizes, s.k)?),
        GenCommand::Cover { sizes, labelling } => {
            let m = parse_sizes(&sizes.sizes, sizes.k)?;
            if sizes.k < 2 {
                bail!(coded("USAGE", "a double cover needs --k at least 2"));
            }
            double_cover(sizes.k, &m, &load_labelling(labelling, &m)?)
        }
        GenCommand::Ckr { k, r } => {
            if *k == 0 || *r == 0 {
                bail!(coded("USAGE", "--k and --R must be at least 1"));
            }
            ckr(*k, *r)
        }
    };
    write_or_print(output, serialize_kgraph(&g), "k-graph")
}

/// A table file together with the graph it refers to.
struct LoadedTable {
    graph_field: String,
    graph: KGraph,
    pairs: Vec<(kgraph::NormalPath, kgraph::NormalPath)>,
}

/// The graph path inside a table file is resolved against the table file's
/// directory.
fn load_table(path: &Path) -> anyhow::Result<LoadedTable> {
    let text = read(path)?;
    let doc = TableDocument::parse(&text).map_err(|e| coded("SYNTAX", format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let graph = load_graph(&base.join(&doc.graph))?;
    let pairs = doc
        .resolve(&graph)
        .map_err(|e| coded("BAD_PATH", format!("{}: {e}", path.display())))?;
    Ok(LoadedTable {
        graph_field: doc.graph,
        graph,
        pairs,
    })
}

fn group_for<'g>(g: &'g KGraph, cap: u32) -> anyhow::Result<Group<'g>> {
    Group::new(g)
        .map(|group| group.with_degree_cap(cap))
        .map_err(|e| coded(e.code(), e))
}

fn element(group: &Group, table: &LoadedTable, path: &Path) -> anyhow::Result<GroupElement> {
    group
        .element(table.pairs.clone())
        .map_err(|e| coded(e.code(), format!("{}: {e}", path.display())))
}

fn emit_element(g: &KGraph, graph_field: &str, e: &GroupElement, output: Option<&Path>) -> anyhow::Result<Outcome> {
    let doc = TableDocument::from_pairs(g, graph_field, e.pairs());
    write_or_print(output, doc.to_json(), "table")
}

fn same_graph(a: &LoadedTable, b: &LoadedTable) -> anyhow::Result<()> {
    if a.graph != b.graph {
        bail!(coded("GRAPH_MISMATCH", "the two tables refer to different k-graphs"));
    }
    Ok(())
}

fn cmd_group(cmd: &GroupCommand, cli: &Cli) -> anyhow::Result<Outcome> {
    let output = cli.output.as_deref();
    let group_error = |e: kgraph::GroupError| coded(e.code(), e);
    match cmd {
        GroupCommand::Mul { a, b } => {
            let (ta, tb) = (load_table(a)?, load_table(b)?);
            same_graph(&ta, &tb)?;
            let group = group_for(&ta.graph, cli.degree_cap)?;
            let (ea, eb) = (element(&group, &ta, a)?, element(&group, &tb, b)?);
            let product = group.multiply(&ea, &eb).map_err(group_error)?;
            emit_element(&ta.graph, &ta.graph_field, &product, output)
        }
        GroupCommand::Inv { a } => {
            let ta = load_table(a)?;
            let group = group_for(&ta.graph, cli.degree_cap)?;
            let e = element(&group, &ta, a)?;
            emit_element(&ta.graph, &ta.graph_field, &group.invert(&e), output)
        }
        GroupCommand::Reduce { a } => {
            let ta = load_table(a)?;
            let group = group_for(&ta.graph, cli.degree_cap)?;
            let e = element(&group, &ta, a)?;
            emit_element(&ta.graph, &ta.graph_field, &group.reduce(&e), output)
        }
        GroupCommand::Eq { a, b } => {
            let (ta, tb) = (load_table(a)?, load_table(b)?);
            same_graph(&ta, &tb)?;
            let group = group_for(&ta.graph, cli.degree_cap)?;
            let (ea, eb) = (element(&group, &ta, a)?, element(&group, &tb, b)?);
            let equal = group.equals(&ea, &eb).map_err(group_error)?;
            Ok(Outcome {
                exit_code: if equal { EXIT_OK } else { EXIT_FAILED },
                text: if equal { "equal\n" } else { "not equal\n" }.to_string(),
                json: json!({ "equal": equal }),
            })
        }
        GroupCommand::Apply { a, path } => {
            let ta = load_table(a)?;
            let group = group_for(&ta.graph, cli.degree_cap)?;
            let e = element(&group, &ta, a)?;
            let p = parse_path(&ta.graph, path).map_err(|err| coded(err.code(), err))?;
            match group.apply_to_path(&e, &p) {
                Ok(image) => {
                    let image = format_path(&ta.graph, &image);
                    Ok(Outcome::ok(
                        format!("{image}\n"),
                        json!({ "input": format_path(&ta.graph, &p), "image": image }),
                    ))
                }
                Err(kgraph::GroupError::OutsideDomain) => Ok(Outcome {
                    exit_code: EXIT_FAILED,
                    text: "OUTSIDE_DOMAIN: no domain path is a prefix of the input\n".to_string(),
                    json: json!({ "input": format_path(&ta.graph, &p), "error": "OUTSIDE_DOMAIN" }),
                }),
                Err(other) => Err(group_error(other)),
            }
        }
        GroupCommand::Random { graph, expansions } => {
            let g = load_graph(graph)?;
            let group = group_for(&g, cli.degree_cap)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let e = group.random_element(&mut rng, *expansions).map_err(group_error)?;
            let field = graph
                .file_name()
                .ok_or_else(|| anyhow!("graph path has no file name"))
                .context("random")?
                .to_string_lossy()
                .into_owned();
            emit_element(&g, &field, &e, output)
        }
    }
}
