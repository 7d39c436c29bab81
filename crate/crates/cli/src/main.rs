//! `respcheck`: evaluate responsibility formulae on extensive form games.

mod output;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use respcheck_core::eval::{Evaluator, Pruning};
use respcheck_core::fixtures::fixture_by_name;
use respcheck_core::gap::{expansion_size, GapError, MAX_EXPANSION_SIZE};
use respcheck_core::gen::{random_formula, random_game, FormulaParams, GenParams};
use respcheck_core::oracle::{self, within_oracle_scale};
use respcheck_core::verify::{verify_game, FastEngine, OracleEngine, Semantics};
use respcheck_core::{
    eval_gap, gap_formula, parse_formula, parse_game, vanishing_order, Formula, Game, GapKind, GapQuery, OutcomeSet,
    Vanishing,
};

use output::{verify_payload, Format, GameDigest, OutputRecord, Payload, StatsRecord};

#[derive(Parser, Debug)]
#[command(
    name = "respcheck",
    version,
    about = "Counterfactual and seeing-to-it responsibility in extensive form games"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GameArg {
    /// Game file, or a fixture name such as `montana-a` or `hog:3`.
    game: String,
    /// Parameter for `gn` and `hog` fixtures.
    #[arg(long)]
    param: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the truth set of a formula.
    Eval {
        #[command(flatten)]
        game: GameArg,
        formula: String,
        /// Use the brute-force reference semantics.
        #[arg(long)]
        oracle: bool,
        /// Print operation counters.
        #[arg(long)]
        stats: bool,
        /// Disable pruning in the seeing-to-it search.
        #[arg(long)]
        no_prune: bool,
    },
    /// Evaluate a responsibility gap of a given kind and order.
    Gap {
        #[command(flatten)]
        game: GameArg,
        /// Base formula.
        formula: String,
        /// `c`, `s` or `cs`.
        kind: String,
        order: Option<usize>,
        /// Report the first order at which the gap is empty.
        #[arg(long, conflicts_with = "order")]
        find_vanishing: bool,
        /// Also print the gap as a formula.
        #[arg(long)]
        expand: bool,
    },
    /// Run the invariant suite on a game.
    Verify {
        #[command(flatten)]
        game: GameArg,
        /// File with one formula per line; `#` starts a comment.
        #[arg(long, conflicts_with_all = ["seed", "count"])]
        formulas: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random formulae, on top of one per proposition.
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Check against the reference semantics instead of the fast engine.
        #[arg(long)]
        oracle: bool,
        /// Corrupt the engine under test (negative control).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Print a seeded random game.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        branching: usize,
        #[arg(long, value_delimiter = ',', default_value = "a,b")]
        agents: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "p,q")]
        props: Vec<String>,
        /// Probability that an outcome carries a given proposition.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
    /// Print a named game.
    Fixture {
        #[command(flatten)]
        game: GameArg,
    },
}

fn load_game(arg: &GameArg) -> Result<Game> {
    let path = Path::new(&arg.game);
    if path.is_file() {
        if arg.param.is_some() {
            bail!("--param only applies to fixtures");
        }
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return parse_game(&text).with_context(|| format!("parsing {}", path.display()));
    }
    let (name, param) = match arg.game.split_once(':') {
        Some((name, p)) => {
            let p = p.parse::<usize>().with_context(|| format!("invalid fixture parameter `{p}`"))?;
            if arg.param.is_some_and(|q| q != p) {
                bail!("conflicting fixture parameters {p} and {}", arg.param.unwrap_or_default());
            }
            (name, Some(p))
        }
        None => (arg.game.as_str(), arg.param),
    };
    fixture_by_name(name, param).map_err(|e| anyhow!("`{}` is not a readable file, and {e}", arg.game))
}

fn load_formula(game: &Game, text: &str) -> Result<Formula> {
    let f = parse_formula(text).with_context(|| format!("parsing formula `{text}`"))?;
    for p in f.props() {
        if game.props().iter().all(|q| q != p) {
            eprintln!("warning: proposition `{p}` labels no outcome; it is false everywhere");
        }
    }
    for a in f.agents() {
        if game.agents().iter().all(|b| b != a) {
            eprintln!("warning: agent `{a}` owns no decision node; it is never responsible");
        }
    }
    Ok(f)
}

fn check_oracle_scale(game: &Game) -> Result<()> {
    if !within_oracle_scale(game) {
        bail!(
            "game is too large for the reference semantics (an agent owns more than {} decision nodes)",
            oracle::MAX_ORACLE_DECISIONS
        );
    }
    Ok(())
}

/// Adds an outcome to every seeing-to-it truth set.
struct Faulty;

impl Semantics for Faulty {
    fn truth_set(&self, game: &Game, f: &Formula) -> OutcomeSet {
        let mut set = FastEngine::default().truth_set(game, f);
        if matches!(f, Formula::SeeTo(..)) {
            set.insert(0);
        }
        set
    }
}

fn verify_formulas(game: &Game, file: Option<&str>, seed: u64, count: usize) -> Result<Vec<Formula>> {
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let mut out = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                out.push(load_formula(game, line).with_context(|| format!("{path}:{}", i + 1))?);
            }
        }
        if out.is_empty() {
            bail!("{path} contains no formulae");
        }
        return Ok(out);
    }
    let mut out: Vec<Formula> = game.props().iter().map(|p| Formula::prop(p.clone())).collect();
    let params = FormulaParams::new(game.agents(), game.props(), 2, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.extend((0..count).map(|_| random_formula(&mut rng, &params)));
    Ok(out)
}

/// Runs a command and returns its record plus whether every check held.
fn run(command: Command, echo: Vec<String>) -> Result<(OutputRecord, bool)> {
    let record =
        |game: &Game, result, stats| OutputRecord { command: echo.clone(), game: GameDigest::of(game), result, stats };
    match command {
        Command::Eval { game, formula, oracle, stats, no_prune } => {
            let game = load_game(&game)?;
            let f = load_formula(&game, &formula)?;
            if oracle && stats {
                eprintln!("warning: the reference semantics keeps no counters");
            }
            let (set, counters) = if oracle {
                check_oracle_scale(&game)?;
                (oracle::truth_set_ref(&game, &f), None)
            } else {
                let pruning = if no_prune { Pruning::Disabled } else { Pruning::Enabled };
                let mut ev = Evaluator::new(&game).with_pruning(pruning);
                let set = ev.truth_set(&f);
                (set, Some(ev.stats()))
            };
            let stats = counters.filter(|_| stats).map(StatsRecord::from);
            let result = Payload::TruthSet { formula: f.to_string(), truth_set: set.names() };
            Ok((record(&game, result, stats), true))
        }
        Command::Gap { game, formula, kind, order, find_vanishing, expand } => {
            let game = load_game(&game)?;
            let f = load_formula(&game, &formula)?;
            let kind: GapKind = kind.parse()?;
            if find_vanishing {
                let (vanishing_order, bound) = match vanishing_order(&game, &f, kind)? {
                    Vanishing::At(i) => (Some(i), game.outcome_count() - 1),
                    Vanishing::NotByBound { bound } => (None, bound),
                };
                let result =
                    Payload::Vanishing { formula: f.to_string(), gap_kind: kind.to_string(), vanishing_order, bound };
                return Ok((record(&game, result, None), true));
            }
            let order = order.ok_or_else(|| anyhow!("an order is required unless --find-vanishing is given"))?;
            let set = eval_gap(&game, &f, kind, order);
            let expansion = if expand {
                let size = expansion_size(f.size(), kind, game.agents().len(), order);
                match gap_formula(&GapQuery { base: f.clone(), kind, order }, game.agents()) {
                    Ok(g) => Some(g.to_string()),
                    Err(e @ (GapError::ExpansionTooLarge { .. } | GapError::NoAgents)) => {
                        eprintln!("warning: not expanding ({e}; size {size}, limit {MAX_EXPANSION_SIZE})");
                        None
                    }
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            let result = Payload::Gap {
                formula: f.to_string(),
                gap_kind: kind.to_string(),
                order,
                truth_set: set.names(),
                expansion,
            };
            Ok((record(&game, result, None), true))
        }
        Command::Verify { game, formulas, seed, count, oracle, inject_fault } => {
            let game = load_game(&game)?;
            let fs = verify_formulas(&game, formulas.as_deref(), seed, count)?;
            let engine: &dyn Semantics = match (inject_fault, oracle) {
                (true, _) => &Faulty,
                (false, true) => {
                    check_oracle_scale(&game)?;
                    &OracleEngine
                }
                (false, false) => &FastEngine::default(),
            };
            let report = verify_game(&game, &fs, engine);
            let passed = report.all_passed();
            Ok((record(&game, verify_payload(&report, fs.len()), None), passed))
        }
        Command::Gen { seed, depth, branching, agents, props, density } => {
            let params = GenParams {
                seed,
                max_depth: depth,
                max_branching: branching,
                agents,
                props,
                leaf_label_density: density,
            };
            let game = random_game(&params)?;
            Ok((record(&game, Payload::Game { text: game.to_string() }, None), true))
        }
        Command::Fixture { game } => {
            let game = load_game(&game)?;
            Ok((record(&game, Payload::Game { text: game.to_string() }, None), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let echo: Vec<String> = std::env::args().skip(1).collect();
    match run(cli.command, echo) {
        Ok((record, ok)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(record.render(cli.format).as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            // A gap outliving its proven bound is an engine bug, not a usage error.
            match e.downcast_ref::<GapError>() {
                Some(GapError::BoundExceeded { .. }) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
