//! Command-line frontend: verification, rendering, encoding, solving, the
//! synthesis loop, lower-bound sweeps, prefix tooling and the embedded
//! catalog.
//!
//! Exit codes: 0 on success (a computed verdict such as UNSAT is success),
//! 1 when `--expect` is given and the verdict differs, 2 on usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sortnet::encode::{encode_problem, parse_dimacs, varmap_doc, write_dimacs, EncodingMode};
use sortnet::net::{ComparatorNetwork, Verdict};
use sortnet::prefix::{
    enumerate_two_layer_prefixes, first_layer_bz, first_layer_pb, green_filter, optimize_prefix,
    prefix_fitness, EaConfig, Prefix, PrefixLabel,
};
use sortnet::render::{render, RenderFormat};
use sortnet::solver::{solve_clauses, solve_external_raw, SolverConfig, Status};
use sortnet::synth::{
    initial_inputs, prove_lower_bound, resume, synthesize, InitialInputs, InputStrategy,
    LoopState, SolverBackend, SynthConfig, SynthesisVerdict,
};
use sortnet::{catalog, BitVector};

/// Environment variable holding the default external solver command.
const EXTERNAL_SOLVER_ENV: &str = "SORTNET_EXTERNAL_SOLVER";

#[derive(Parser)]
#[command(
    name = "sortnet",
    version,
    about = "sorting-network synthesis and verification via SAT"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively verify a network against all binary inputs
    Verify {
        /// network: a file path or catalog://<id>
        network: String,
        #[arg(long, value_enum)]
        expect: Option<ExpectVerify>,
        #[arg(long)]
        json: bool,
    },
    /// Draw a network as a text or SVG Knuth diagram
    Render {
        network: String,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the CNF for "a depth-d network extending the prefix sorts the inputs"
    Encode {
        #[arg(short = 'n', long)]
        channels: usize,
        #[arg(short = 'd', long)]
        depth: usize,
        /// pb | bz | green[:t] | catalog://<id> | path (default: empty prefix)
        #[arg(long)]
        prefix: Option<String>,
        /// number of inputs to include, or `all`
        #[arg(long, default_value = "all")]
        inputs: String,
        #[arg(long, value_enum, default_value = "small-window-first")]
        strategy: StrategyArg,
        #[arg(long, default_value = "improved")]
        mode: String,
        #[arg(long)]
        seed: Option<u64>,
        /// DIMACS output path
        #[arg(short, long)]
        output: PathBuf,
        /// variable-map sidecar path (default: <output>.varmap.json)
        #[arg(long)]
        varmap: Option<PathBuf>,
    },
    /// Decide a DIMACS file
    Solve {
        cnf: PathBuf,
        #[arg(long, value_enum, default_value = "internal")]
        solver: SolverArg,
        /// external solver command (overrides SORTNET_EXTERNAL_SOLVER)
        #[arg(long)]
        solver_cmd: Option<String>,
        #[arg(long)]
        max_conflicts: Option<u64>,
        #[arg(long)]
        max_seconds: Option<f64>,
        #[arg(long, value_enum)]
        expect: Option<ExpectSolve>,
        #[arg(long)]
        json: bool,
    },
    /// Iteratively synthesize a sorting network of the given depth
    Synthesize(SynthesizeArgs),
    /// Refute a depth for every prefix in a sweep
    Prove {
        #[arg(short = 'n', long)]
        channels: usize,
        #[arg(short = 'd', long)]
        depth: usize,
        /// prefix references; repeatable
        #[arg(long = "prefix")]
        prefixes: Vec<String>,
        /// sweep all two-layer representatives instead
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value = "improved")]
        mode: String,
        #[arg(long, value_enum, default_value = "internal")]
        solver: SolverArg,
        #[arg(long)]
        solver_cmd: Option<String>,
        #[arg(long)]
        max_conflicts: Option<u64>,
        #[arg(long)]
        max_seconds: Option<f64>,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        #[arg(long)]
        json: bool,
        /// also write the JSON report here
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search channel permutations for a cheaper prefix
    OptimizePrefix {
        /// pb | bz | green[:t] | catalog://<id> | path
        prefix: String,
        /// channel count, required for the built-in styles
        #[arg(short = 'n', long)]
        channels: Option<usize>,
        /// EA settings as a JSON file; flags below override its fields
        #[arg(long)]
        ea_config: Option<PathBuf>,
        #[arg(long)]
        sample_size: Option<usize>,
        #[arg(long)]
        population: Option<usize>,
        #[arg(long)]
        generations: Option<usize>,
        #[arg(long)]
        mutation_rate: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Emit a green filter prefix
    GreenFilter {
        #[arg(short = 'n', long)]
        channels: usize,
        /// layers; defaults to log2(n)
        #[arg(short = 't', long)]
        layers: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sum of output window sizes of a prefix
    WindowSum {
        /// network reference; alternative to --style
        network: Option<String>,
        #[arg(long, value_enum)]
        style: Option<StyleArg>,
        #[arg(short = 'n', long)]
        channels: Option<usize>,
    },
    /// List second-layer representatives over a reflected first layer
    EnumeratePrefixes {
        #[arg(short = 'n', long)]
        channels: usize,
        #[arg(long)]
        json: bool,
    },
    /// List catalog entries, or print one as JSON
    Catalog { id: Option<String> },
}

#[derive(Args)]
struct SynthesizeArgs {
    #[arg(short = 'n', long)]
    channels: usize,
    #[arg(short = 'd', long)]
    depth: usize,
    #[arg(long)]
    prefix: Option<String>,
    #[arg(long, default_value = "improved")]
    mode: String,
    /// number of initial inputs
    #[arg(long, default_value_t = 0)]
    initial: usize,
    #[arg(long, value_enum, default_value = "small-window-first")]
    strategy: StrategyArg,
    /// counterexamples added per iteration
    #[arg(long, default_value_t = 1)]
    batch: usize,
    #[arg(long, value_enum, default_value = "internal")]
    solver: SolverArg,
    #[arg(long)]
    solver_cmd: Option<String>,
    #[arg(long)]
    max_conflicts: Option<u64>,
    #[arg(long)]
    max_seconds: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    expect: Option<ExpectSynth>,
    #[arg(long)]
    json: bool,
    /// write the found network here
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// continue from a saved loop state
    #[arg(long)]
    resume_in: Option<PathBuf>,
    /// save the loop state here when the budget runs out
    #[arg(long)]
    resume_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Internal,
    External,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    SmallWindowFirst,
    Random,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum StyleArg {
    Pb,
    Bz,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum ExpectVerify {
    Sorting,
    Counterexample,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum ExpectSolve {
    Sat,
    Unsat,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum ExpectSynth {
    Found,
    NoNetwork,
}

/// Error carrying the process exit code.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn mismatch(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<sortnet::Error> for CliError {
    fn from(e: sortnet::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// Load a network from `catalog://<id>` or a JSON file (plain or labeled).
fn load_network(reference: &str) -> CliResult<ComparatorNetwork> {
    if let Some(id) = reference.strip_prefix("catalog://") {
        return Ok(catalog::get(id)?.network);
    }
    let text = std::fs::read_to_string(Path::new(reference))?;
    match ComparatorNetwork::from_json(&text) {
        Ok(net) => Ok(net),
        Err(_) => Ok(Prefix::from_json(&text)?.network),
    }
}

/// Resolve a prefix reference: a built-in style, a catalog id, or a file.
fn load_prefix(reference: &str, channels: usize) -> CliResult<Prefix> {
    match reference {
        "pb" => return Ok(first_layer_pb(channels)),
        "bz" => return Ok(first_layer_bz(channels)),
        "green" => return Ok(green_filter(channels, channels.trailing_zeros() as usize)?),
        _ => {}
    }
    if let Some(t) = reference.strip_prefix("green:") {
        let t: usize = t
            .parse()
            .map_err(|_| CliError::usage(format!("bad green filter depth `{t}`")))?;
        return Ok(green_filter(channels, t)?);
    }
    if let Some(id) = reference.strip_prefix("catalog://") {
        let entry = catalog::get(id)?;
        return Ok(Prefix::new(entry.network, PrefixLabel::Enumerated));
    }
    let text = std::fs::read_to_string(Path::new(reference))?;
    match Prefix::from_json(&text) {
        Ok(p) => Ok(p),
        Err(_) => Ok(Prefix::new(
            ComparatorNetwork::from_json(&text)?,
            PrefixLabel::Enumerated,
        )),
    }
}

fn parse_mode(mode: &str) -> CliResult<EncodingMode> {
    EncodingMode::from_str(mode).map_err(|e| CliError::usage(e.to_string()))
}

fn strategy_of(arg: StrategyArg, seed: Option<u64>) -> InputStrategy {
    match arg {
        StrategyArg::SmallWindowFirst => InputStrategy::SmallWindowFirst,
        StrategyArg::Random => InputStrategy::Random {
            seed: seed.unwrap_or(1),
        },
    }
}

fn solver_backend(
    solver: SolverArg,
    solver_cmd: Option<&str>,
    max_conflicts: Option<u64>,
    max_seconds: Option<f64>,
) -> CliResult<SolverBackend> {
    match solver {
        SolverArg::Internal => Ok(SolverBackend::Internal(SolverConfig {
            max_conflicts,
            max_seconds,
            ..SolverConfig::default()
        })),
        SolverArg::External => {
            let command = solver_cmd
                .map(str::to_string)
                .or_else(|| std::env::var(EXTERNAL_SOLVER_ENV).ok())
                .ok_or_else(|| {
                    CliError::usage(format!(
                        "--solver external needs --solver-cmd or ${EXTERNAL_SOLVER_ENV}"
                    ))
                })?;
            let parts: Vec<String> = command.split_whitespace().map(str::to_string).collect();
            if parts.is_empty() {
                return Err(CliError::usage("empty external solver command"));
            }
            Ok(SolverBackend::External(parts))
        }
    }
}

fn write_or_print(output: Option<&Path>, content: &str) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Verify {
            network,
            expect,
            json,
        } => {
            let net = load_network(&network)?;
            let verdict = net.verify_sorting()?;
            if json {
                let doc = match &verdict {
                    Verdict::Sorting => serde_json::json!({
                        "verdict": "sorting",
                        "channels": net.channels(),
                        "depth": net.depth(),
                        "size": net.size(),
                    }),
                    Verdict::Counterexample(cx) => serde_json::json!({
                        "verdict": "counterexample",
                        "input": cx.to_string(),
                    }),
                };
                println!("{doc}");
            } else {
                match &verdict {
                    Verdict::Sorting => println!(
                        "sorting network: {} channels, depth {}",
                        net.channels(),
                        net.depth()
                    ),
                    Verdict::Counterexample(cx) => {
                        println!("not a sorting network: counterexample {cx}")
                    }
                }
            }
            let ok = match expect {
                None => true,
                Some(ExpectVerify::Sorting) => verdict.is_sorting(),
                Some(ExpectVerify::Counterexample) => !verdict.is_sorting(),
            };
            if !ok {
                return Err(CliError::mismatch("verdict differs from --expect"));
            }
            Ok(())
        }
        Command::Render {
            network,
            format,
            output,
        } => {
            let net = load_network(&network)?;
            let doc = render(
                &net,
                match format {
                    FormatArg::Text => RenderFormat::Text,
                    FormatArg::Svg => RenderFormat::Svg,
                },
            )?;
            write_or_print(output.as_deref(), &doc)
        }
        Command::Encode {
            channels,
            depth,
            prefix,
            inputs,
            strategy,
            mode,
            seed,
            output,
            varmap,
        } => {
            let mode = parse_mode(&mode)?;
            let prefix_net = match prefix {
                Some(p) => load_prefix(&p, channels)?.network,
                None => ComparatorNetwork::new(channels),
            };
            let input_list: Vec<BitVector> = if inputs == "all" {
                if channels > sortnet::EXHAUSTIVE_LIMIT {
                    return Err(CliError::usage(format!(
                        "--inputs all needs at most {} channels",
                        sortnet::EXHAUSTIVE_LIMIT
                    )));
                }
                (0..1u64 << channels)
                    .map(|x| BitVector::new(channels, x))
                    .collect()
            } else {
                let count: usize = inputs
                    .parse()
                    .map_err(|_| CliError::usage(format!("bad --inputs value `{inputs}`")))?;
                initial_inputs(channels, &prefix_net, count, strategy_of(strategy, seed))?
            };
            let inst = encode_problem(channels, depth, &prefix_net, &input_list, mode)?;
            std::fs::write(&output, write_dimacs(&inst))?;
            let sidecar = varmap.unwrap_or_else(|| {
                let mut p = output.clone().into_os_string();
                p.push(".varmap.json");
                PathBuf::from(p)
            });
            std::fs::write(&sidecar, serde_json::to_string(&varmap_doc(&inst))?)?;
            let stats = inst.stats();
            eprintln!(
                "wrote {} vars, {} clauses, {} literals",
                stats.vars, stats.clauses, stats.literals
            );
            Ok(())
        }
        Command::Solve {
            cnf,
            solver,
            solver_cmd,
            max_conflicts,
            max_seconds,
            expect,
            json,
        } => {
            let text = std::fs::read_to_string(&cnf)?;
            let (num_vars, clauses) = parse_dimacs(&text)?;
            let result = match solver_backend(
                solver,
                solver_cmd.as_deref(),
                max_conflicts,
                max_seconds,
            )? {
                SolverBackend::Internal(cfg) => solve_clauses(num_vars, &clauses, &cfg)?,
                SolverBackend::External(command) => {
                    solve_external_raw(num_vars, &clauses, &command)?
                }
            };
            print_solve_result(&result, json);
            let ok = match expect {
                None => true,
                Some(ExpectSolve::Sat) => result.status == Status::Sat,
                Some(ExpectSolve::Unsat) => result.status == Status::Unsat,
            };
            if !ok {
                return Err(CliError::mismatch("status differs from --expect"));
            }
            Ok(())
        }
        Command::Synthesize(args) => run_synthesize(args),
        Command::Prove {
            channels,
            depth,
            prefixes,
            enumerate,
            mode,
            solver,
            solver_cmd,
            max_conflicts,
            max_seconds,
            parallelism,
            json,
            output,
        } => {
            let mode = parse_mode(&mode)?;
            let prefix_list: Vec<Prefix> = if enumerate {
                if !prefixes.is_empty() {
                    return Err(CliError::usage("--enumerate excludes --prefix"));
                }
                enumerate_two_layer_prefixes(channels)?
            } else if prefixes.is_empty() {
                return Err(CliError::usage("need --prefix or --enumerate"));
            } else {
                prefixes
                    .iter()
                    .map(|p| load_prefix(p, channels))
                    .collect::<CliResult<Vec<_>>>()?
            };
            let cfg = SynthConfig {
                mode,
                backend: solver_backend(solver, solver_cmd.as_deref(), max_conflicts, max_seconds)?,
                ..SynthConfig::default()
            };
            let report = prove_lower_bound(channels, depth, &prefix_list, &cfg, parallelism)?;
            if let Some(path) = &output {
                std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", report.render_table());
            }
            Ok(())
        }
        Command::OptimizePrefix {
            prefix,
            channels,
            ea_config,
            sample_size,
            population,
            generations,
            mutation_rate,
            seed,
            output,
            json,
        } => {
            let p = match channels {
                Some(n) => load_prefix(&prefix, n)?,
                None => {
                    if matches!(prefix.as_str(), "pb" | "bz" | "green")
                        || prefix.starts_with("green:")
                    {
                        return Err(CliError::usage("-n is required with a built-in prefix"));
                    }
                    load_prefix(&prefix, 0)?
                }
            };
            let mut cfg: EaConfig = match ea_config {
                Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
                None => EaConfig::default(),
            };
            if let Some(v) = sample_size {
                cfg.sample_size = v;
            }
            if let Some(v) = population {
                cfg.population = v;
            }
            if let Some(v) = generations {
                cfg.generations = v;
            }
            if let Some(v) = mutation_rate {
                cfg.mutation_rate = v;
            }
            if let Some(v) = seed {
                cfg.seed = v;
            }
            let before = prefix_fitness(&p.network, cfg.sample_size)?;
            let best = optimize_prefix(&p, &cfg)?;
            let after = prefix_fitness(&best.network, cfg.sample_size)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "fitness_before": before,
                        "fitness_after": after,
                        "prefix": serde_json::from_str::<serde_json::Value>(&best.to_json()?)?,
                    })
                );
                if let Some(path) = output {
                    std::fs::write(path, best.to_json()? + "\n")?;
                }
            } else {
                eprintln!("fitness {before} -> {after}");
                write_or_print(output.as_deref(), &(best.to_json()? + "\n"))?;
            }
            Ok(())
        }
        Command::GreenFilter {
            channels,
            layers,
            output,
        } => {
            let t = layers.unwrap_or_else(|| channels.trailing_zeros() as usize);
            let p = green_filter(channels, t)?;
            write_or_print(output.as_deref(), &(p.to_json()? + "\n"))
        }
        Command::WindowSum {
            network,
            style,
            channels,
        } => {
            let net = match (network, style) {
                (Some(reference), None) => load_network(&reference)?,
                (None, Some(style)) => {
                    let n =
                        channels.ok_or_else(|| CliError::usage("--style needs -n <channels>"))?;
                    match style {
                        StyleArg::Pb => first_layer_pb(n).network,
                        StyleArg::Bz => first_layer_bz(n).network,
                    }
                }
                _ => return Err(CliError::usage("give either a network or --style with -n")),
            };
            println!("{}", net.window_sum()?);
            Ok(())
        }
        Command::EnumeratePrefixes { channels, json } => {
            let classes = enumerate_two_layer_prefixes(channels)?;
            if json {
                let docs: Vec<serde_json::Value> = classes
                    .iter()
                    .map(|p| Ok(serde_json::from_str(&p.to_json()?)?))
                    .collect::<CliResult<_>>()?;
                println!("{}", serde_json::Value::Array(docs));
            } else {
                for (idx, p) in classes.iter().enumerate() {
                    println!("{idx:03}: {}", p.network.to_json()?);
                }
                eprintln!("{} classes", classes.len());
            }
            Ok(())
        }
        Command::Catalog { id } => {
            match id {
                Some(id) => {
                    let entry = catalog::get(&id)?;
                    println!("{}", entry.network.to_json()?);
                    eprintln!(
                        "{}: {} channels, depth {}, {:?}; {}",
                        entry.id,
                        entry.claimed_channels,
                        entry.claimed_depth,
                        entry.kind,
                        entry.provenance
                    );
                }
                None => {
                    for id in catalog::list() {
                        let entry = catalog::get(&id)?;
                        println!(
                            "{:<14} {:>2} channels  depth {:>2}  {}",
                            entry.id, entry.claimed_channels, entry.claimed_depth, entry.provenance
                        );
                    }
                }
            }
            Ok(())
        }
    }
}

fn run_synthesize(args: SynthesizeArgs) -> CliResult<()> {
    let mode = parse_mode(&args.mode)?;
    let cfg = SynthConfig {
        mode,
        batch_size: args.batch,
        strategy: strategy_of(args.strategy, args.seed),
        backend: solver_backend(
            args.solver,
            args.solver_cmd.as_deref(),
            args.max_conflicts,
            args.max_seconds,
        )?,
        ..SynthConfig::default()
    };
    let outcome = match &args.resume_in {
        Some(path) => {
            let state: LoopState = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            resume(state, &cfg)?
        }
        None => {
            let prefix_net = match &args.prefix {
                Some(p) => load_prefix(p, args.channels)?.network,
                None => ComparatorNetwork::new(args.channels),
            };
            synthesize(
                args.channels,
                args.depth,
                &prefix_net,
                InitialInputs::Count(args.initial),
                &cfg,
            )?
        }
    };
    if args.json {
        let doc = serde_json::json!({
            "verdict": outcome.verdict,
            "iterations": outcome.iterations,
            "inputs_used": outcome.inputs_used(),
            "seconds": outcome.seconds,
            "network": outcome
                .network
                .as_ref()
                .map(|n| serde_json::to_value(n).unwrap()),
        });
        println!("{doc}");
    } else {
        match outcome.verdict {
            SynthesisVerdict::Found => {
                let net = outcome.network.as_ref().unwrap();
                println!(
                    "SAT: verified sorting network, {} channels, depth {} ({} iterations, {} inputs)",
                    net.channels(),
                    net.depth(),
                    outcome.iterations,
                    outcome.inputs_used()
                );
            }
            SynthesisVerdict::NoNetwork => println!(
                "UNSAT: no depth-{} network on {} channels extends the prefix ({} iterations, {} inputs)",
                args.depth,
                args.channels,
                outcome.iterations,
                outcome.inputs_used()
            ),
            SynthesisVerdict::Unknown => println!(
                "UNKNOWN: budget exhausted after {} iterations",
                outcome.iterations
            ),
        }
    }
    if let (Some(net), Some(path)) = (&outcome.network, &args.output) {
        let json = net.to_json().map_err(CliError::from)?;
        std::fs::write(path, json + "\n")?;
    }
    if let (Some(state), Some(path)) = (&outcome.state, &args.resume_out) {
        std::fs::write(path, serde_json::to_string(state)?)?;
    }
    let ok = match args.expect {
        None => true,
        Some(ExpectSynth::Found) => outcome.verdict == SynthesisVerdict::Found,
        Some(ExpectSynth::NoNetwork) => outcome.verdict == SynthesisVerdict::NoNetwork,
    };
    if !ok {
        return Err(CliError::mismatch("verdict differs from --expect"));
    }
    Ok(())
}

fn print_solve_result(result: &sortnet::solver::SolveResult, json: bool) {
    if json {
        let doc = serde_json::json!({
            "status": match result.status {
                Status::Sat => "sat",
                Status::Unsat => "unsat",
                Status::Unknown => "unknown",
            },
            "model": result.model.as_ref().map(|m| {
                (1..m.len())
                    .map(|v| if m[v] { v as i64 } else { -(v as i64) })
                    .collect::<Vec<_>>()
            }),
            "conflicts": result.stats.conflicts,
            "decisions": result.stats.decisions,
            "propagations": result.stats.propagations,
            "seconds": result.stats.seconds,
        });
        println!("{doc}");
        return;
    }
    match result.status {
        Status::Sat => {
            println!("s SATISFIABLE");
            if let Some(model) = &result.model {
                let mut line = String::from("v");
                for (v, &value) in model.iter().enumerate().skip(1) {
                    line.push(' ');
                    line.push_str(&if value {
                        v.to_string()
                    } else {
                        format!("-{v}")
                    });
                }
                line.push_str(" 0");
                println!("{line}");
            }
        }
        Status::Unsat => println!("s UNSATISFIABLE"),
        Status::Unknown => println!("s UNKNOWN"),
    }
}
