//! Command-line interface to the plumbing graph invariants.
//!
//! Exit status: 0 on success, 1 when the mathematics says no (invalid graph,
//! inapplicable cycle, failed verification), 2 on usage or parse errors.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use plumbing::cone::{self, box_size};
use plumbing::graph::Definiteness;
use plumbing::open_book::{self, OpenBookReport};
use plumbing::verify::{self, INSTANCE_LIMIT};
use plumbing::{Cycle, CycleError, Lattice, PlumbingGraph};

#[derive(Parser)]
#[command(
    name = "plumbing",
    version,
    about = "Invariants of Milnor open books of plumbing graphs"
)]
struct Cli {
    /// Emit a single JSON document instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the tree and negative-definiteness invariants.
    Validate { file: PathBuf },
    /// Print the fundamental cycle.
    Zmin { file: PathBuf },
    /// Print the canonical cycle K.
    Canonical { file: PathBuf },
    /// Euler characteristic of a cycle.
    Chi {
        file: PathBuf,
        #[arg(long)]
        cycle: String,
    },
    /// Open-book invariants of an anti-nef cycle.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        cycle: String,
    },
    /// Canonical contact structure invariants.
    Contact { file: PathBuf },
    /// Nonzero anti-nef cycles with coefficients in [0, N].
    Cone {
        file: PathBuf,
        #[arg(long)]
        bound: i64,
    },
    /// Cone elements of a given genus within the bound, with minimizers.
    Stratum {
        file: PathBuf,
        #[arg(long)]
        bound: i64,
        #[arg(long, allow_negative_numbers = true)]
        genus: i64,
    },
    /// Exhaustive verification of the open-book theorems.
    Verify {
        file: PathBuf,
        #[arg(long)]
        bound: i64,
        /// Allow scans of more than 10^7 cycles.
        #[arg(long)]
        force: bool,
    },
}

enum Failure {
    /// Exit 1.
    Math(String),
    /// Exit 2.
    Usage(String),
}

type CmdResult = Result<Output, Failure>;

/// What a command prints, plus whether it should exit 1 afterwards.
struct Output {
    human: String,
    json: String,
    failed: bool,
}

impl Output {
    fn new(human: String, json: &impl Serialize) -> Self {
        Output {
            human,
            json: serde_json::to_string(json).expect("reports serialize"),
            failed: false,
        }
    }
}

fn read_graph(path: &Path) -> Result<PlumbingGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    PlumbingGraph::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Lattice, Failure> {
    read_graph(path)?
        .validate()
        .map_err(|e| Failure::Math(format!("{}: {e}", path.display())))
}

fn parse_cycle<'a>(lattice: &'a Lattice, literal: &str) -> Result<Cycle<'a>, Failure> {
    lattice
        .parse_cycle(literal)
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn check_bound(bound: i64) -> Result<(), Failure> {
    if bound <= 0 {
        Err(Failure::Usage(format!(
            "--bound must be positive, got {bound}"
        )))
    } else {
        Ok(())
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct MinorJson {
    order: usize,
    vertex: String,
    value: String,
}

#[derive(Serialize)]
struct ValidateJson {
    tree: bool,
    negative_definite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failing_minor: Option<MinorJson>,
}

fn cmd_validate(file: &Path) -> CmdResult {
    let graph = read_graph(file)?;
    let tree = graph.is_tree();
    let definiteness = graph.definiteness();
    let mut human = format!(
        "tree: {}, negative definite: {}",
        yes_no(tree),
        yes_no(definiteness.is_negative_definite())
    );
    let failing_minor = match definiteness {
        Definiteness::NegativeDefinite => None,
        Definiteness::Fails(m) => {
            write!(human, "\n{m}").unwrap();
            Some(MinorJson {
                order: m.order,
                vertex: m.vertex,
                value: m.value.to_string(),
            })
        }
    };
    if graph.is_empty() {
        human.push_str("\ngraph has no vertices");
    }
    let report = ValidateJson {
        tree,
        negative_definite: failing_minor.is_none(),
        failing_minor,
    };
    let mut out = Output::new(human, &report);
    out.failed = !(report.tree && report.negative_definite);
    Ok(out)
}

fn cmd_zmin(file: &Path) -> CmdResult {
    let lattice = load(file)?;
    let z = cone::compute_zmin(&lattice);
    Ok(Output::new(z.to_string(), &z))
}

fn cmd_canonical(file: &Path) -> CmdResult {
    let lattice = load(file)?;
    let k = lattice.canonical_cycle();
    Ok(Output::new(k.to_string(), &k))
}

#[derive(Serialize)]
struct ChiJson<'a> {
    cycle: &'a Cycle<'a>,
    chi: i64,
}

fn cmd_chi(file: &Path, literal: &str) -> CmdResult {
    let lattice = load(file)?;
    let d = parse_cycle(&lattice, literal)?;
    let chi = d.euler_char();
    Ok(Output::new(chi.to_string(), &ChiJson { cycle: &d, chi }))
}

fn literal_of(lattice: &Lattice, values: &[i64]) -> String {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{}={v}", lattice.name(i)))
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_invariants(file: &Path, literal: &str) -> CmdResult {
    let lattice = load(file)?;
    let z = parse_cycle(&lattice, literal)?;
    let report = OpenBookReport::new(&z).map_err(|e| match e {
        CycleError::NotAntinef(_) | CycleError::Zero => Failure::Math(e.to_string()),
        other => Failure::Usage(other.to_string()),
    })?;
    let human = format!(
        "cycle: {}\nantinef: yes\nbinding components (beta): {}\npage genus (g): {}\n\
         Milnor number (mu): {}\nchi(-Z): {}\nbinding vector: {}",
        report.cycle,
        report.beta,
        report.genus,
        report.milnor,
        report.chi_minus,
        literal_of(&lattice, &report.binding_vector)
    );
    Ok(Output::new(human, &report))
}

fn cmd_contact(file: &Path) -> CmdResult {
    let lattice = load(file)?;
    let c = open_book::contact_invariants(&lattice);
    let human = format!(
        "sg_an: {}\nbn_an: {}\nnorm_an: {}\nrational: {}\nminimal: {}\nzmin: {}",
        c.sg,
        c.bn,
        c.norm,
        yes_no(c.rational),
        yes_no(c.minimal),
        c.zmin
    );
    Ok(Output::new(human, &c))
}

fn cmd_cone(file: &Path, bound: i64) -> CmdResult {
    check_bound(bound)?;
    let lattice = load(file)?;
    let cone = cone::enumerate_cone(&lattice, bound).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut human = format!(
        "# {} nonzero anti-nef cycles with coefficients in [0, {bound}]",
        cone.len()
    );
    for z in cone.iter() {
        write!(human, "\n{z}").unwrap();
    }
    Ok(Output::new(human, &cone))
}

#[derive(Serialize)]
struct StratumJson<'r, 'a> {
    genus: i64,
    bound: i64,
    within_bound: bool,
    cycles: &'r [Cycle<'a>],
    min_milnor: Option<i64>,
    min_beta: Option<i64>,
    milnor_argmin: &'r [Cycle<'a>],
    beta_argmin: &'r [Cycle<'a>],
    argmins_agree: bool,
}

fn cmd_stratum(file: &Path, bound: i64, genus: i64) -> CmdResult {
    check_bound(bound)?;
    let lattice = load(file)?;
    let found = open_book::stratum_minimizers(&lattice, bound, genus)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let mut human = format!("genus-{genus} stratum within bound {bound}: ");
    let Some(s) = found else {
        human.push_str("empty");
        let json = StratumJson {
            genus,
            bound,
            within_bound: true,
            cycles: &[],
            min_milnor: None,
            min_beta: None,
            milnor_argmin: &[],
            beta_argmin: &[],
            argmins_agree: true,
        };
        return Ok(Output::new(human, &json));
    };
    write!(human, "{} cycles", s.stratum.len()).unwrap();
    for z in &s.stratum {
        write!(human, "\n  {z}").unwrap();
    }
    write!(human, "\nmin mu = {}, attained at:", s.min_milnor).unwrap();
    for z in &s.milnor_argmin {
        write!(human, "\n  {z}").unwrap();
    }
    write!(human, "\nmin beta = {}, attained at:", s.min_beta).unwrap();
    for z in &s.beta_argmin {
        write!(human, "\n  {z}").unwrap();
    }
    write!(human, "\nminimizers agree: {}", yes_no(s.argmins_agree())).unwrap();
    let json = StratumJson {
        genus,
        bound,
        within_bound: true,
        cycles: &s.stratum,
        min_milnor: Some(s.min_milnor),
        min_beta: Some(s.min_beta),
        milnor_argmin: &s.milnor_argmin,
        beta_argmin: &s.beta_argmin,
        argmins_agree: s.argmins_agree(),
    };
    Ok(Output::new(human, &json))
}

fn cmd_verify(file: &Path, bound: i64, force: bool) -> CmdResult {
    check_bound(bound)?;
    let lattice = load(file)?;
    let instances = box_size(lattice.len(), bound);
    if instances > INSTANCE_LIMIT {
        if !force {
            return Err(Failure::Usage(format!(
                "bound {bound} on {} vertices scans {instances} cycles (limit {INSTANCE_LIMIT}); \
                 pass --force to run anyway",
                lattice.len()
            )));
        }
        eprintln!("warning: scanning {instances} cycles");
    }
    let id = file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| file.display().to_string());
    let report =
        verify::run_suite(&lattice, &id, bound).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut human = format!(
        "graph {}, all coefficients in [0, {}]",
        report.graph, report.bound
    );
    for p in &report.properties {
        let status = if p.ok { "PASS" } else { "FAIL" };
        write!(
            human,
            "\n{status} {:<36} {:>10} instances",
            p.name, p.instances
        )
        .unwrap();
        if let Some(ce) = &p.counterexample {
            let cycles: Vec<String> = ce
                .cycles
                .iter()
                .map(|(l, c)| format!("{l}=[{c}]"))
                .collect();
            write!(
                human,
                "\n     first counterexample {}: {} vs {}",
                cycles.join(" "),
                ce.lhs,
                ce.rhs
            )
            .unwrap();
        }
    }
    let failed = report.failures().count();
    write!(
        human,
        "\n{} properties, {failed} failed, {:.3}s",
        report.properties.len(),
        report.seconds
    )
    .unwrap();
    let mut out = Output::new(human, &report);
    out.failed = !report.ok();
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Zmin { file } => cmd_zmin(file),
        Command::Canonical { file } => cmd_canonical(file),
        Command::Chi { file, cycle } => cmd_chi(file, cycle),
        Command::Invariants { file, cycle } => cmd_invariants(file, cycle),
        Command::Contact { file } => cmd_contact(file),
        Command::Cone { file, bound } => cmd_cone(file, *bound),
        Command::Stratum { file, bound, genus } => cmd_stratum(file, *bound, *genus),
        Command::Verify { file, bound, force } => cmd_verify(file, *bound, *force),
    };
    match result {
        Ok(out) => {
            let text = if cli.json { &out.json } else { &out.human };
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
