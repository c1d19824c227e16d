use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use selfsim_core::fractality::{
    check, default_depth, witness_search, CheckOptions, FractalError, SearchOptions, Stabilize,
};
use selfsim_core::{GroupDef, GroupError, Property, Status, Vertex};
use selfsim::report;

const EXIT_USAGE: u8 = 2;
const EXIT_ORDER_CAP: u8 = 3;
const DEFAULT_MAX_ORDER: u128 = 1_000_000_000_000_000_000_000_000_000_000;

#[derive(Parser)]
#[command(name = "selfsim", version, about = "Fractality checks for self-similar groups of tree automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property and print the verdict.
    Check(CheckArgs),
    /// Search for a word fixing a vertex with a given section there.
    Witness(WitnessArgs),
    /// Print the portrait of a word truncated to some depth.
    Portrait(PortraitArgs),
    /// Print the section of a word at a vertex.
    Section(SectionArgs),
    /// Print the definition and metadata of a group.
    Info(GroupArg),
}

#[derive(Args)]
struct GroupArg {
    /// Built-in id (hanoi:<d>, hanoi-chain:<d>, ggs:<p>:<e1,...>, grigorchuk) or a definition file.
    #[arg(long)]
    group: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long)]
    property: Property,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    max_level: Option<usize>,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long)]
    vertex: String,
    #[arg(long)]
    target: String,
    /// Require the witness to fix the whole level of the vertex.
    #[arg(long)]
    level: bool,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, default_value_t = 8)]
    max_len: usize,
}

#[derive(Args)]
struct PortraitArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long)]
    word: String,
    #[arg(long)]
    depth: usize,
}

#[derive(Args)]
struct SectionArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long)]
    word: String,
    #[arg(long)]
    vertex: String,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }
}

impl From<FractalError> for Failure {
    fn from(e: FractalError) -> Self {
        let code = match e {
            FractalError::Group(GroupError::OrderLimit { .. }) => EXIT_ORDER_CAP,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn load(arg: &GroupArg) -> Result<GroupDef, Failure> {
    selfsim::resolve(&arg.group).map_err(Failure::usage)
}

fn max_order() -> Result<u128, Failure> {
    match std::env::var("FRACTALITY_MAX_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("FRACTALITY_MAX_ORDER must be a positive integer, got '{}'", v))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn status_code(status: Status) -> u8 {
    match status {
        Status::CertifiedPass => 0,
        Status::PassUpToDepth => 10,
        Status::CertifiedFail => 20,
    }
}

fn run_check(args: &CheckArgs) -> Result<u8, Failure> {
    let def = load(&args.group)?;
    let depth = args.depth.unwrap_or_else(|| default_depth(def.degree()));
    let mut options = CheckOptions::with_depth(depth);
    if let Some(k) = args.max_level {
        options.max_level = k;
    }
    if let Some(l) = args.max_len {
        options.max_len = l;
    }
    options.order_limit = max_order()?;
    let verdict = check(&def, args.property, &options)?;
    match args.format {
        Format::Text => print!("{}", report::verdict_text(&def, &verdict)),
        Format::Json => println!("{}", report::verdict_json(&def, &verdict)),
    }
    Ok(status_code(verdict.status))
}

fn run_witness(args: &WitnessArgs) -> Result<u8, Failure> {
    let def = load(&args.group)?;
    let u = Vertex::parse(&args.vertex).map_err(Failure::usage)?;
    let target = def.parse_word(&args.target).map_err(Failure::usage)?;
    let options = SearchOptions {
        max_len: args.max_len,
        depth: args.depth.unwrap_or_else(|| default_depth(def.degree())),
        ..SearchOptions::default()
    };
    let mode = if args.level { Stabilize::Level } else { Stabilize::Vertex };
    match witness_search(&def, &u, &target, &options, mode)? {
        Some(w) => {
            println!("{}", def.display_word(&w));
            Ok(0)
        }
        None => {
            println!("no witness up to length {}", args.max_len);
            Ok(10)
        }
    }
}

fn run_portrait(args: &PortraitArgs) -> Result<u8, Failure> {
    let def = load(&args.group)?;
    let w = def.parse_word(&args.word).map_err(Failure::usage)?;
    let f = def.unfold(&w, args.depth).map_err(Failure::usage)?;
    print!("{}", report::portrait(&f));
    Ok(0)
}

fn run_section(args: &SectionArgs) -> Result<u8, Failure> {
    let def = load(&args.group)?;
    let w = def.parse_word(&args.word).map_err(Failure::usage)?;
    let u = Vertex::parse(&args.vertex).map_err(Failure::usage)?;
    def.shape().validate(&u).map_err(Failure::usage)?;
    let s = def.word_section(&w, &u).map_err(Failure::usage)?;
    println!("{}", def.display_word(&s));
    Ok(0)
}

fn run_info(args: &GroupArg) -> Result<u8, Failure> {
    let def = load(args)?;
    print!("{}", def);
    let ann = def.annotations();
    if let Some(family) = &ann.family {
        println!("family: {}", family);
    }
    let ss = def.check_self_similar();
    println!("self_similar: {}", ss.holds);
    match def.rooted_cycle_generator() {
        Some(g) => println!("rooted_cycle_generator: {}", def.names()[g]),
        None => println!("rooted_cycle_generator: none"),
    }
    println!("cyclic_root_labels: {}", selfsim_core::fractality::root_labels_in_cyclic_sylow(&def));
    if let Some(flags) = &ann.ggs {
        println!("ggs_constant_vector: {}", flags.constant_vector);
        println!("ggs_periodic: {}", flags.periodic);
    }
    if let Some(p) = &ann.presentation {
        println!("presentation relators: {}", p.relators.relators().len());
    }
    for h in &ann.witness_hints {
        println!("hint: {}", def.display_word(h));
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => run_check(a),
        Command::Witness(a) => run_witness(a),
        Command::Portrait(a) => run_portrait(a),
        Command::Section(a) => run_section(a),
        Command::Info(a) => run_info(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
