//! The `rackhom` command line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::cubical::{
    is_cycle, parse_chain, parse_chain_header, reverse_orientation_3, Chain, SpaceKind,
};
use crate::diagram::{
    canonical_cycle, chirality_certificate_over, enumerate_colorings, enumerate_extended_colorings,
    extended_canonical_cycle, knot_invariant_in, parse_diagram, LinkDiagram,
};
use crate::homology::{
    class_of_cycle, homology_with, HomologyError, HomologyOptions, DEFAULT_MAX_CUBES,
};
use crate::rack::{
    automorphisms_with_limit, dihedral_rack, orbits, parse_table, trivial_rack, validate_axioms,
    FiniteRack,
};
use crate::surface::{
    nonreversibility_certificate_over, twist_spun_trefoil_chain, TWIST_SPUN_TREFOIL,
};

pub const DEFAULT_MAX_SIZE: usize = 12;
pub const DEFAULT_MAX_DIM: usize = 4;
const DEFAULT_RACK: &str = "dihedral:3";

/// Exit code and standard output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    /// 0 success, 1 domain failure, 2 usage or parse error.
    pub exit_code: i32,
    pub stdout: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult {
            exit_code: 0,
            stdout,
        }
    }

    fn failure(stdout: String) -> Self {
        CommandResult {
            exit_code: 1,
            stdout,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        let mut stdout = message.into();
        if !stdout.ends_with('\n') {
            stdout.push('\n');
        }
        CommandResult {
            exit_code: 2,
            stdout,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rackhom",
    about = "Homology of rack spaces and canonical classes of labelled diagrams"
)]
struct Cli {
    #[command(flatten)]
    guards: Guards,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Guards {
    /// Largest rack accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIZE)]
    max_size: usize,
    /// Largest homology dimension accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    max_dim: usize,
    /// Largest number of cubes in a boundary matrix.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CUBES)]
    max_cubes: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rack axioms, orbit count and automorphism count.
    Check { rack: String },
    /// H_n of the rack space, or of the extended rack space.
    Homology {
        rack: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        extended: bool,
    },
    /// Colourings of a diagram and their canonical cycles.
    Color {
        diagram: PathBuf,
        rack: String,
        #[arg(long)]
        extended: bool,
    },
    /// Class set of canonical cycles, with the writhe.
    Invariant {
        diagram: PathBuf,
        rack: String,
        /// Use arc labels only, even when the diagram has region data.
        #[arg(long)]
        plain: bool,
    },
    /// Cycle check and class coordinates of a chain.
    Class {
        chain: String,
        #[arg(long)]
        rack: Option<String>,
    },
    /// Orientation reversal of a triple-point chain, as a chain file.
    Reverse {
        chain: String,
        #[arg(long)]
        rack: Option<String>,
    },
    /// Non-reversibility of the 2-twist-spun trefoil and chirality of the trefoil.
    Certify {
        #[arg(long, default_value = DEFAULT_RACK)]
        rack: String,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult::usage(text)
            } else {
                CommandResult::ok(text)
            };
        }
    };
    match execute(&cli) {
        Ok(r) | Err(r) => r,
    }
}

type Outcome = Result<CommandResult, CommandResult>;

fn execute(cli: &Cli) -> Outcome {
    let g = &cli.guards;
    match &cli.command {
        Command::Check { rack } => check(rack),
        Command::Homology {
            rack,
            dim,
            extended,
        } => {
            let rack = load_rack(rack, g)?;
            if *dim > g.max_dim {
                return Err(CommandResult::usage(format!(
                    "dimension {dim} exceeds the guard {}; raise --max-dim",
                    g.max_dim
                )));
            }
            let kind = if *extended {
                SpaceKind::ExtendedRackSpace
            } else {
                SpaceKind::RackSpace
            };
            let h = homology_with(&rack, *dim, kind, &options(g)).map_err(homology_failure)?;
            Ok(CommandResult::ok(format!("{h}\n")))
        }
        Command::Color {
            diagram,
            rack,
            extended,
        } => {
            let d = load_diagram(diagram)?;
            let rack = load_rack(rack, g)?;
            color(&d, &rack, *extended)
        }
        Command::Invariant {
            diagram,
            rack,
            plain,
        } => {
            let d = load_diagram(diagram)?;
            let rack = load_rack(rack, g)?;
            let kind = if d.has_regions() && !plain {
                SpaceKind::ExtendedRackSpace
            } else {
                SpaceKind::RackSpace
            };
            let h = homology_with(&rack, 2, kind, &options(g)).map_err(homology_failure)?;
            let inv = knot_invariant_in(&d, &Arc::new(h))
                .map_err(|e| CommandResult::failure(format!("{e}\n")))?;
            let mut out = String::new();
            writeln!(out, "space: {}", kind.tag()).unwrap();
            write!(out, "{inv}").unwrap();
            Ok(CommandResult::ok(out))
        }
        Command::Class { chain, rack } => {
            let (_, chain) = load_chain(chain, rack.as_deref(), g)?;
            if chain.dim() > g.max_dim {
                return Err(CommandResult::usage(format!(
                    "dimension {} exceeds the guard {}; raise --max-dim",
                    chain.dim(),
                    g.max_dim
                )));
            }
            if !is_cycle(&chain) {
                return Err(CommandResult::failure("not a cycle\n".into()));
            }
            let h = homology_with(chain.rack(), chain.dim(), chain.kind(), &options(g))
                .map_err(homology_failure)?;
            let class = class_of_cycle(&Arc::new(h.clone()), &chain)
                .map_err(|e| CommandResult::failure(format!("{e}\n")))?;
            let mut out = String::new();
            writeln!(out, "cycle: yes").unwrap();
            writeln!(out, "group: {h}").unwrap();
            writeln!(out, "class: {class}").unwrap();
            let gens: Vec<String> = (0..h.torsion_factors().len())
                .filter(|&i| class.is_torsion() && class.generates_torsion_summand(i))
                .map(|i| format!("Z_{}", h.torsion_factors()[i]))
                .collect();
            if !gens.is_empty() {
                writeln!(out, "generates: {}", gens.join(", ")).unwrap();
            }
            Ok(CommandResult::ok(out))
        }
        Command::Reverse { chain, rack } => {
            let (name, chain) = load_chain(chain, rack.as_deref(), g)?;
            let reversed = reverse_orientation_3(&chain)
                .map_err(|e| CommandResult::failure(format!("{e}\n")))?;
            Ok(CommandResult::ok(reversed.to_text(&name)))
        }
        Command::Certify { rack } => {
            let rack = load_rack(rack, g)?;
            let surface = nonreversibility_certificate_over(rack.clone());
            let knot = chirality_certificate_over(rack);
            let out = format!("{surface}{knot}");
            if surface.passed() && knot.passed() {
                Ok(CommandResult::ok(out))
            } else {
                Err(CommandResult::failure(out))
            }
        }
    }
}

fn options(g: &Guards) -> HomologyOptions {
    HomologyOptions {
        max_cubes: g.max_cubes,
    }
}

fn homology_failure(e: HomologyError) -> CommandResult {
    match e {
        HomologyError::TooLarge { .. } => CommandResult::usage(format!("{e}; raise --max-cubes")),
        other => CommandResult::failure(format!("{other}\n")),
    }
}

fn check(spec: &str) -> Outcome {
    let (name, table) = match builtin_rack(spec) {
        Some(r) => {
            let r = r.map_err(|e| CommandResult::usage(e.to_string()))?;
            (spec.to_string(), r.table().clone())
        }
        None => {
            let text = read(Path::new(spec))?;
            let table =
                parse_table(&text).map_err(|e| CommandResult::usage(format!("{spec}: {e}")))?;
            (spec.to_string(), table)
        }
    };
    let report = validate_axioms(&table);
    if let Some(v) = report.first_rack_violation() {
        return Err(CommandResult::failure(format!("{name}: not a rack: {v}\n")));
    }
    let rack = FiniteRack::from_table(table).expect("axioms hold");
    let mut props = vec!["rack"];
    if report.is_quandle {
        props.push("quandle");
    }
    if report.is_involutory {
        props.push("involutory");
    }
    let aut = match automorphisms_with_limit(&rack, DEFAULT_MAX_SIZE.max(rack.size())) {
        Ok(a) => a.len().to_string(),
        Err(_) => "?".into(),
    };
    Ok(CommandResult::ok(format!(
        "{}; orbits={}; aut={aut}\n",
        props.join(" "),
        orbits(&rack).len()
    )))
}

fn builtin_rack(spec: &str) -> Option<Result<FiniteRack, crate::rack::RackError>> {
    let (family, n) = spec.split_once(':')?;
    let n: usize = n.parse().ok()?;
    match family {
        "dihedral" => Some(dihedral_rack(n)),
        "trivial" => Some(trivial_rack(n)),
        _ => None,
    }
}

fn read(path: &Path) -> Result<String, CommandResult> {
    std::fs::read_to_string(path)
        .map_err(|e| CommandResult::usage(format!("{}: {e}", path.display())))
}

/// Resolves a builtin rack name or a rack file path.
fn load_rack(spec: &str, g: &Guards) -> Result<Arc<FiniteRack>, CommandResult> {
    let rack = match builtin_rack(spec) {
        Some(r) => r.map_err(|e| CommandResult::usage(e.to_string()))?,
        None => {
            let text = read(Path::new(spec))?;
            let table =
                parse_table(&text).map_err(|e| CommandResult::usage(format!("{spec}: {e}")))?;
            FiniteRack::from_table(table)
                .map_err(|e| CommandResult::failure(format!("{spec}: {e}\n")))?
                .with_name(spec)
        }
    };
    if rack.size() > g.max_size {
        return Err(CommandResult::usage(format!(
            "rack of size {} exceeds the guard {}; raise --max-size",
            rack.size(),
            g.max_size
        )));
    }
    Ok(Arc::new(rack))
}

fn load_diagram(path: &Path) -> Result<LinkDiagram, CommandResult> {
    let text = read(path)?;
    parse_diagram(&text).map_err(|e| CommandResult::usage(format!("{}: {e}", path.display())))
}

/// A chain file, or the builtin triple-point chain. The rack is `--rack` if
/// given, else the header's rack resolved as a builtin or relative to the
/// chain file. Returns the rack name to write back and the chain.
fn load_chain(
    spec: &str,
    rack: Option<&str>,
    g: &Guards,
) -> Result<(String, Chain), CommandResult> {
    if spec == TWIST_SPUN_TREFOIL {
        let name = rack.unwrap_or(DEFAULT_RACK);
        let r = load_rack(name, g)?;
        let chain =
            twist_spun_trefoil_chain(r).map_err(|e| CommandResult::failure(format!("{e}\n")))?;
        return Ok((name.to_string(), chain));
    }
    let path = Path::new(spec);
    let text = read(path)?;
    let header =
        parse_chain_header(&text).map_err(|e| CommandResult::usage(format!("{spec}: {e}")))?;
    let rack_spec = match rack {
        Some(r) => r.to_string(),
        None if builtin_rack(&header.rack_name).is_some() => header.rack_name.clone(),
        None => path
            .parent()
            .unwrap_or(Path::new(""))
            .join(&header.rack_name)
            .to_string_lossy()
            .into_owned(),
    };
    let r = load_rack(&rack_spec, g)?;
    let (_, chain) =
        parse_chain(&text, r).map_err(|e| CommandResult::usage(format!("{spec}: {e}")))?;
    Ok((header.rack_name, chain))
}

fn color(d: &LinkDiagram, rack: &Arc<FiniteRack>, extended: bool) -> Outcome {
    let mut out = String::new();
    let mut block = String::new();
    if extended {
        let labs = enumerate_extended_colorings(d, rack)
            .map_err(|e| CommandResult::failure(format!("{e}\n")))?;
        writeln!(out, "{} extended labellings", labs.len()).unwrap();
        for l in &labs {
            let z = extended_canonical_cycle(d, l, rack).expect("enumerated labellings are valid");
            writeln!(out, "{l}  cycle: {z}").unwrap();
            writeln!(block, "{l}").unwrap();
        }
    } else {
        let labs = enumerate_colorings(d, rack);
        writeln!(out, "{} labellings", labs.len()).unwrap();
        for l in &labs {
            let z = canonical_cycle(d, l, rack).expect("enumerated labellings are valid");
            writeln!(out, "{l}  cycle: {z}").unwrap();
            writeln!(block, "{l}").unwrap();
        }
    }
    write!(out, "```\n{block}```\n").unwrap();
    Ok(CommandResult::ok(out))
}
