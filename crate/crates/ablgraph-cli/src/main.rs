mod experiment;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use ablgraph::abl::{abelian_girth, abl_oracle, dumbbell_bound, shortest_theta_bound, AblValue};
use ablgraph::cert::{parse_certificate, Certificate};
use ablgraph::edgelist::{parse_edge_list, write_edge_list};
use ablgraph::gen;
use ablgraph::girth::girth;
use ablgraph::graph::Multigraph;
use ablgraph::lps::{certify_lps_abl, LpsAblOutcome};
use ablgraph::moore::certify_abl_upper;

/// Exit codes: 1 usage, 2 parse, 3 budget exhaustion, 4 verification failure.
pub enum CliError {
    Usage(String),
    Parse(String),
    Budget(String),
    Verify(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Verify(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Budget(m) | CliError::Verify(m) => {
                m
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "ablgraph",
    about = "Girth and abelian girth of multigraphs, with replayable certificates",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact girth of a graph in edge-list format.
    Girth { file: PathBuf },
    /// Abelian girth: exact pipeline, bounded oracle, or structural bound.
    Abl(AblArgs),
    /// Volume-argument upper bound on the abelian girth (min degree >= 3).
    Moore(MooreArgs),
    /// Generate graphs from the built-in families.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Replay a certificate against a graph; exits 4 on any mismatch.
    Verify { cert: PathBuf, graph: PathBuf },
    /// Sweep a graph family and emit one CSV row per instance.
    Experiment(experiment::ExperimentArgs),
}

#[derive(Args)]
struct AblArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = AblMode::Exact)]
    mode: AblMode,
    /// Search budget for `--mode oracle`.
    #[arg(long)]
    max_len: Option<usize>,
    /// Certificate output path (default: input with extension `cert`).
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AblMode {
    Exact,
    Oracle,
    Structural,
}

#[derive(Args)]
struct MooreArgs {
    file: PathBuf,
    /// Base vertex for the walk enumeration.
    #[arg(long, default_value_t = 0)]
    start: usize,
    /// Certificate output path (default: input with extension `moore.cert`).
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Theta graph with three path lengths.
    Theta {
        l: usize,
        m: usize,
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Two cycles sharing a vertex.
    FigureEight {
        m: usize,
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Two cycles joined by a bar.
    Barbell {
        m: usize,
        n: usize,
        b: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    Cycle {
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    Complete {
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Simple d-regular graph from the seeded pairing model.
    RandomRegular {
        n: usize,
        d: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// LPS graph X^{p,q}: writes BASE.graph, BASE.meta and BASE.cert.
    Lps {
        p: u64,
        q: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Girth { file } => cmd_girth(&file),
        Command::Abl(args) => cmd_abl(args),
        Command::Moore(args) => cmd_moore(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Verify { cert, graph } => cmd_verify(&cert, &graph),
        Command::Experiment(args) => experiment::run(args),
    }
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Multigraph, CliError> {
    let text = read_to_string(path)?;
    parse_edge_list(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn cmd_girth(file: &Path) -> Result<(), CliError> {
    let g = load_graph(file)?;
    match girth(&g) {
        ablgraph::GirthResult::Infinite => println!("girth infinite"),
        ablgraph::GirthResult::Finite { length, witness } => {
            println!("girth {length}");
            println!("witness {}", witness.steps_string());
        }
    }
    Ok(())
}

fn default_cert_path(input: &Path, extension: &str) -> PathBuf {
    input.with_extension(extension)
}

fn cmd_abl(args: AblArgs) -> Result<(), CliError> {
    let g = load_graph(&args.file)?;
    let cert_path = args
        .cert
        .clone()
        .unwrap_or_else(|| default_cert_path(&args.file, "cert"));
    match args.mode {
        AblMode::Exact => {
            let r = abelian_girth(&g);
            match r.value {
                AblValue::Infinite => {
                    println!("abl infinite");
                }
                AblValue::Finite(v) => {
                    println!("abl {v}");
                    let witness = r.witness.expect("finite value carries a witness");
                    let cert = Certificate::from_abl_witness(&witness);
                    match &cert.witness {
                        ablgraph::cert::CertWitness::Walk { .. } => println!("witness walk"),
                        ablgraph::cert::CertWitness::Subgraph { kind, .. } => {
                            println!("witness subgraph {kind}")
                        }
                        ablgraph::cert::CertWitness::Moore { .. } => unreachable!(),
                    }
                    write_file(&cert_path, &cert.to_string())?;
                    println!("certificate {}", cert_path.display());
                }
                AblValue::AboveBudget { .. } => unreachable!("exact mode has no budget"),
            }
        }
        AblMode::Oracle => {
            let max_len = args.max_len.ok_or_else(|| {
                CliError::Usage("--mode oracle requires --max-len".into())
            })?;
            let r = abl_oracle(&g, max_len);
            match r.value {
                AblValue::Finite(v) => {
                    println!("abl {v}");
                    let cert = Certificate::from_abl_witness(&r.witness.unwrap());
                    write_file(&cert_path, &cert.to_string())?;
                    println!("certificate {}", cert_path.display());
                }
                AblValue::AboveBudget { max_len } => {
                    return Err(CliError::Budget(format!(
                        "abelian girth exceeds the search budget {max_len}"
                    )));
                }
                AblValue::Infinite => unreachable!("oracle never proves infinity"),
            }
        }
        AblMode::Structural => {
            let mut best = shortest_theta_bound(&g);
            if let Some((bound, w)) = dumbbell_bound(&g) {
                if best.as_ref().is_none_or(|(b, _)| bound < *b) {
                    best = Some((bound, w));
                }
            }
            match best {
                None => println!("structural bound none"),
                Some((bound, witness)) => {
                    println!("abl <= {bound}");
                    println!("witness subgraph {}", witness.class.kind_name());
                    let cert = Certificate::from_abl_witness(&ablgraph::AblWitness {
                        bound,
                        evidence: ablgraph::AblEvidence::Subgraph(witness),
                    });
                    write_file(&cert_path, &cert.to_string())?;
                    println!("certificate {}", cert_path.display());
                }
            }
        }
    }
    Ok(())
}

fn cmd_moore(args: MooreArgs) -> Result<(), CliError> {
    let g = load_graph(&args.file)?;
    let cert = certify_abl_upper(&g, args.start).map_err(|e| match e {
        ablgraph::moore::MooreError::NotEnoughWalks { .. } => CliError::Budget(e.to_string()),
        other => CliError::Usage(other.to_string()),
    })?;
    println!("moore_h {}", cert.h);
    println!("bound {}", cert.bound);
    let path = args
        .cert
        .unwrap_or_else(|| default_cert_path(&args.file, "moore.cert"));
    write_file(&path, &Certificate::from_moore(&cert).to_string())?;
    println!("certificate {}", path.display());
    Ok(())
}

fn cmd_gen(args: GenCommand) -> Result<(), CliError> {
    let usage = |e: gen::GenError| match e {
        gen::GenError::PairingBudgetExhausted { .. } => CliError::Budget(e.to_string()),
        gen::GenError::BudgetExceeded => CliError::Budget(e.to_string()),
        gen::GenError::InvalidParams(_) => CliError::Usage(e.to_string()),
    };
    match args {
        GenCommand::Theta { l, m, n, out } => {
            let g = gen::make_theta(l, m, n).map_err(usage)?;
            emit(
                out.as_deref(),
                &write_edge_list(&g, Some(&format!("theta({l},{m},{n})"))),
            )
        }
        GenCommand::FigureEight { m, n, out } => {
            let g = gen::make_figure_eight(m, n).map_err(usage)?;
            emit(
                out.as_deref(),
                &write_edge_list(&g, Some(&format!("figure-eight({m},{n})"))),
            )
        }
        GenCommand::Barbell { m, n, b, out } => {
            let g = gen::make_barbell(m, n, b).map_err(usage)?;
            emit(
                out.as_deref(),
                &write_edge_list(&g, Some(&format!("barbell({m},{n},{b})"))),
            )
        }
        GenCommand::Cycle { n, out } => {
            let g = gen::make_cycle(n).map_err(usage)?;
            emit(out.as_deref(), &write_edge_list(&g, Some(&format!("C_{n}"))))
        }
        GenCommand::Complete { n, out } => {
            let g = gen::make_complete(n).map_err(usage)?;
            emit(out.as_deref(), &write_edge_list(&g, Some(&format!("K_{n}"))))
        }
        GenCommand::RandomRegular { n, d, seed, out } => {
            let g = gen::random_regular(n, d, seed).map_err(usage)?;
            emit(
                out.as_deref(),
                &write_edge_list(&g, Some(&format!("random-regular(n={n},d={d},seed={seed})"))),
            )
        }
        GenCommand::Lps { p, q, out } => cmd_gen_lps(p, q, &out),
    }
}

fn cmd_gen_lps(p: u64, q: u64, base: &Path) -> Result<(), CliError> {
    let (build, outcome) = certify_lps_abl(p, q).map_err(|e| match e {
        ablgraph::lps::LpsError::InvalidParams(_) => CliError::Usage(e.to_string()),
        other => CliError::Budget(other.to_string()),
    })?;
    let g = &build.graph;
    let params = &build.params;
    let n = g.vertex_count();
    let d = (p + 1) as usize;

    let graph_path = base.with_extension("graph");
    let meta_path = base.with_extension("meta");
    let cert_path = base.with_extension("cert");
    write_file(
        &graph_path,
        &write_edge_list(g, Some(&format!("lps X^({p},{q})"))),
    )?;

    println!("lps X^({p},{q})");
    println!("n {n}");
    println!("d {d}");
    println!("legendre {}", params.legendre_pq);
    println!("bipartite {}", params.bipartite);
    println!("r0 {}", params.r0);
    let quoted = q * (q * q + 1);
    if quoted as usize != n {
        println!(
            "note: vertex count {n} equals the projective group order; \
             the often-quoted q(q^2+1) = {quoted} differs"
        );
    }

    let cert_line = match &outcome {
        LpsAblOutcome::Certified(cert) => {
            println!("abl_bound {}", cert.bound);
            println!("abl_bound_cap {}", 8 * params.r0);
            let denom = (n as f64).ln() / (p as f64).ln();
            println!("ratio_abl_bound {:.4}", cert.bound as f64 / denom);
            println!("ratio_reference_16_3 {:.4}", 16.0 / 3.0);
            write_file(&cert_path, &Certificate::from_moore(cert).to_string())?;
            println!("certificate {}", cert_path.display());
            format!("certificate {}", cert_path.display())
        }
        LpsAblOutcome::Falsified { walks_found } => {
            println!(
                "falsification: only {walks_found} closed non-backtracking walks of length {} \
                 found at the identity; expected at least 3",
                2 * params.r0
            );
            "certificate none".to_string()
        }
    };

    let meta = format!(
        "p {p}\nq {q}\nn {n}\nd {d}\nlegendre {}\nbipartite {}\nr0 {}\n{}\n",
        params.legendre_pq, params.bipartite, params.r0, cert_line
    );
    write_file(&meta_path, &meta)?;
    println!("graph {}", graph_path.display());
    println!("meta {}", meta_path.display());
    Ok(())
}

fn cmd_verify(cert_path: &Path, graph_path: &Path) -> Result<(), CliError> {
    let g = load_graph(graph_path)?;
    let text = read_to_string(cert_path)?;
    let cert = parse_certificate(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", cert_path.display())))?;
    cert.verify(&g)
        .map_err(|e| CliError::Verify(e.to_string()))?;
    println!("verified abl <= {}", cert.value);
    Ok(())
}
