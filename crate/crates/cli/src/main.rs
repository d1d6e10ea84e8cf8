use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use krobust::classes::{
    existential_search_with, find_independent_2_dominating, universal_class_check_with, Method, Mode,
};
use krobust::constructions::{add_universal_vertex, gen_family, gk_witness, join, k_copies_blowup, sputnikify, Family};
use krobust::enumeration::enumerate_solutions_with;
use krobust::robustness::{check_k_robust_with, SweepOptions};
use krobust::sweep::run_all_with;
use krobust::{check_solution, parse_graph, Budget, Error, Graph, Guard, Problem, Solution};

#[derive(Parser)]
#[command(name = "krobust", version, about = "k-robust MIS, MDS and maximal matchings under edge removal")]
struct Cli {
    /// Lift the size limits on exhaustive searches.
    #[arg(long, global = true)]
    override_guards: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a graph family as an edge list, e.g. `generate cycle 6`.
    Generate {
        family: String,
        params: Vec<usize>,
    },
    /// Check that a solution file is a valid solution.
    Verify {
        #[command(flatten)]
        input: SolutionInput,
    },
    /// Decide k-robustness of a solution.
    Robust {
        #[command(flatten)]
        input: SolutionInput,
        #[arg(long, default_value = "1")]
        k: Budget,
    },
    /// Decide class membership of a graph.
    Classify {
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        k: Budget,
        #[arg(long, default_value = "universal")]
        mode: Mode,
        #[arg(long, default_value = "bruteforce")]
        method: Method,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Find a k-robust solution, or an independent 2-dominating set.
    Find {
        #[arg(long, required_unless_present = "perfect_stable")]
        problem: Option<Problem>,
        #[arg(long, default_value = "1")]
        k: Budget,
        #[arg(long)]
        graph: PathBuf,
        /// Search for an independent 2-dominating set instead.
        #[arg(long)]
        perfect_stable: bool,
    },
    /// List every solution in canonical order.
    Enumerate {
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Build a derived graph.
    Construct {
        #[command(subcommand)]
        what: Construction,
    },
    /// Run the cross-validation sweeps over small connected graphs.
    Sweep {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Args)]
struct SolutionInput {
    #[arg(long)]
    problem: Problem,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    solution: PathBuf,
}

#[derive(Subcommand)]
enum Construction {
    /// Balanced complete bipartite graph on k+2 per side plus a pendant.
    Gk { k: usize },
    /// Add a vertex adjacent to every other vertex.
    Universal { graph: PathBuf },
    /// k copies with every edge replicated between all pairs of copies.
    Blowup { graph: PathBuf, k: usize },
    /// Join of two graphs.
    Join { first: PathBuf, second: PathBuf },
    /// Attach a pendant to every cycle vertex.
    Sputnik { graph: PathBuf },
}

enum Outcome {
    Yes(String),
    No(String),
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?).map_err(|source| CliError::Input { path: path.to_owned(), source })
}

fn load_solution(problem: Problem, path: &Path) -> Result<Solution, CliError> {
    Solution::parse(problem, &read(path)?).map_err(|source| CliError::Input { path: path.to_owned(), source })
}

fn decide(yes: bool, text: String) -> Outcome {
    if yes {
        Outcome::Yes(text)
    } else {
        Outcome::No(text)
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let guard = if cli.override_guards { Guard::Override } else { Guard::Enforce };
    match cli.command {
        Command::Generate { family, params } => {
            let g = gen_family(Family::from_parts(&family, &params)?)?;
            Ok(Outcome::Yes(g.to_edge_list()))
        }
        Command::Verify { input } => {
            let g = load_graph(&input.graph)?;
            let s = load_solution(input.problem, &input.solution)?;
            let ok = check_solution(input.problem, &g, &s)?;
            Ok(decide(ok, if ok { "VALID\n".into() } else { "INVALID\n".into() }))
        }
        Command::Robust { input, k } => {
            let g = load_graph(&input.graph)?;
            let s = load_solution(input.problem, &input.solution)?;
            let v = check_k_robust_with(input.problem, &g, &s, k, SweepOptions { guard, keep_connected: true })?;
            Ok(decide(v.robust, v.render()))
        }
        Command::Classify { problem, k, mode, method, graph } => {
            let g = load_graph(&graph)?;
            let v = match mode {
                Mode::Universal => universal_class_check_with(problem, &g, k, method, guard)?,
                Mode::Existential => existential_search_with(problem, &g, k, guard)?,
            };
            Ok(decide(v.member, v.render()))
        }
        Command::Find { problem, k, graph, perfect_stable } => {
            let g = load_graph(&graph)?;
            if perfect_stable {
                return Ok(match find_independent_2_dominating(&g)? {
                    Some(s) => Outcome::Yes(format!("FOUND\nSOLUTION: {s}\n")),
                    None => Outcome::No("NONE\n".into()),
                });
            }
            let problem = problem.expect("required unless --perfect-stable");
            let v = existential_search_with(problem, &g, k, guard)?;
            Ok(match v.witness {
                Some(w) => Outcome::Yes(format!("FOUND\nSOLUTION: {}\n", w.solution)),
                None => Outcome::No("NONE\n".into()),
            })
        }
        Command::Enumerate { problem, graph } => {
            let g = load_graph(&graph)?;
            let list = enumerate_solutions_with(problem, &g, guard)?;
            let mut out = format!("COUNT: {}\n", list.len());
            for s in &list.items {
                out.push_str(&format!("{s}\n"));
            }
            Ok(Outcome::Yes(out))
        }
        Command::Construct { what } => {
            let text = match what {
                Construction::Gk { k } => {
                    let w = gk_witness(k)?;
                    format!("{}{}\n", w.graph.to_edge_list(), w.label_comment())
                }
                Construction::Universal { graph } => add_universal_vertex(&load_graph(&graph)?)?.to_edge_list(),
                Construction::Blowup { graph, k } => k_copies_blowup(&load_graph(&graph)?, k)?.to_edge_list(),
                Construction::Join { first, second } => join(&load_graph(&first)?, &load_graph(&second)?).to_edge_list(),
                Construction::Sputnik { graph } => sputnikify(&load_graph(&graph)?).to_edge_list(),
            };
            Ok(Outcome::Yes(text))
        }
        Command::Sweep { max_n } => {
            let reports = run_all_with(max_n, |r| println!("{r}"));
            let failed = reports.iter().filter(|r| !r.passed).count();
            Ok(decide(failed == 0, format!("{} passed, {failed} failed\n", reports.len() - failed)))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Yes(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::No(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
