//! Command-line surface over the belief-calculus library.
//!
//! Every subcommand is a thin adapter: inputs are parsed by the library's
//! document module, the corresponding library call runs, and the result is
//! serialized back with 17-significant-digit reals. Exit codes: 0 success,
//! 1 validation error, 2 computation error.

mod examples;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use credal::combine;
use credal::error::Error;
use credal::geometry;
use credal::io::{self, MassFunctionDoc, ProbabilityDoc};
use credal::limits;
use credal::mass::MassFunction;
use credal::partition;
use credal::total;
use credal::transform;

#[derive(Parser)]
#[command(
    name = "credal",
    version,
    about = "Dempster-Shafer belief calculus toolbox"
)]
struct Cli {
    /// Seed for every randomized step (EM initialization).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallelizable solvers.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combine two or more mass functions.
    Combine(CombineArgs),
    /// Probability transform of a mass function.
    Transform(TransformArgs),
    /// Condition a mass function on an event.
    Condition(ConditionArgs),
    /// Credal-set vertices or singleton belief/plausibility intervals.
    Credal(CredalArgs),
    /// Operations on a family of partition frames.
    Frames(FramesArgs),
    /// Solve a restricted total-belief problem.
    Totalbel(TotalbelArgs),
    /// Train an evidential regression model from CSV data.
    BmrTrain(BmrTrainArgs),
    /// Predict pose estimates from a trained model.
    BmrPredict(BmrPredictArgs),
    /// Replay the built-in worked examples and report pass/fail.
    Examples,
}

#[derive(Clone, Copy, ValueEnum)]
enum CombineRule {
    Dempster,
    Conjunctive,
}

#[derive(Args)]
struct CombineArgs {
    #[arg(long, value_enum, default_value = "dempster")]
    rule: CombineRule,
    /// Mass-function documents, combined left to right.
    #[arg(required = true, num_args = 2..)]
    files: Vec<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformMethod {
    Pignistic,
    Relpl,
    Relbel,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    method: TransformMethod,
    file: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConditionRule {
    Dempster,
    Geometric,
}

#[derive(Args)]
struct ConditionArgs {
    /// Comma-separated element labels of the conditioning event.
    #[arg(long, value_delimiter = ',', required = true)]
    on: Vec<String>,
    #[arg(long, value_enum, default_value = "dempster")]
    rule: ConditionRule,
    file: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CredalMode {
    /// Emit the credal-set vertices.
    #[arg(long)]
    vertices: bool,
    /// Emit per-element [belief, plausibility] intervals.
    #[arg(long)]
    interval: bool,
}

#[derive(Args)]
struct CredalArgs {
    #[command(flatten)]
    mode: CredalMode,
    file: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FramesOp {
    Minref,
    Maxcoa,
    Independent,
}

#[derive(Args)]
struct FramesArgs {
    #[arg(long, value_enum)]
    op: FramesOp,
    /// Family document: base frame plus partitions.
    file: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TotalbelArgs {
    /// Total-belief problem document.
    file: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Replay the constraints against the solution and report.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct BmrTrainArgs {
    /// Training CSV with pose_* and feat_* columns.
    data: PathBuf,
    /// Cluster count per feature, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    clusters: Vec<usize>,
    /// Override the default per-feature discount 1/n_i.
    #[arg(long)]
    m_theta: Option<f64>,
    /// Use raw component densities instead of weighted responsibilities.
    #[arg(long)]
    raw_density: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BmrPredictArgs {
    /// Model document produced by bmr-train.
    model: PathBuf,
    /// Feature values, comma separated, one per feature space.
    #[arg(long, value_delimiter = ',', required = true)]
    features: Vec<f64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    if let Ok(cap) = std::env::var("EVID_ENUM_CAP") {
        match cap.parse::<usize>() {
            Ok(n) => limits::set_enum_cap(n),
            Err(_) => {
                eprintln!("error: EVID_ENUM_CAP must be an integer, got {cap:?}");
                return ExitCode::from(1);
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_validation() {
        1
    } else {
        2
    }
}

fn run(cli: Cli) -> credal::Result<()> {
    match cli.command {
        Command::Combine(args) => cmd_combine(args),
        Command::Transform(args) => cmd_transform(args),
        Command::Condition(args) => cmd_condition(args),
        Command::Credal(args) => cmd_credal(args),
        Command::Frames(args) => cmd_frames(args),
        Command::Totalbel(args) => cmd_totalbel(args, cli.threads),
        Command::BmrTrain(args) => cmd_bmr_train(args, cli.seed),
        Command::BmrPredict(args) => cmd_bmr_predict(args),
        Command::Examples => examples::run(),
    }
}

fn read_to_string(path: &PathBuf) -> credal::Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Document(format!("cannot read {}: {e}", path.display())))
}

fn emit(output: Option<&PathBuf>, doc: &impl Serialize) -> credal::Result<()> {
    let json = io::to_json(doc)?;
    match output {
        Some(path) => fs::write(path, json.as_bytes())
            .map_err(|e| Error::Document(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn load_mass(path: &PathBuf) -> credal::Result<MassFunction> {
    io::parse_mass_json(&read_to_string(path)?)
}

#[derive(Serialize)]
struct ConflictDoc {
    kappa: f64,
    weight: f64,
}

#[derive(Serialize)]
struct CombineOut {
    mass: MassFunctionDoc,
    conflict: ConflictDoc,
}

fn cmd_combine(args: CombineArgs) -> credal::Result<()> {
    let masses: credal::Result<Vec<MassFunction>> = args.files.iter().map(load_mass).collect();
    let masses = masses?;
    let out = match args.rule {
        CombineRule::Dempster => {
            let weight = combine::weight_of_conflict(&masses)?;
            let combined = combine::dempster_combine_all(&masses)?;
            let kappa = 1.0 - (-weight).exp();
            CombineOut {
                mass: MassFunctionDoc::from_mass(&combined),
                conflict: ConflictDoc { kappa, weight },
            }
        }
        CombineRule::Conjunctive => {
            let mut acc = masses[0].clone();
            for m in &masses[1..] {
                acc = combine::conjunctive_combine(&acc, m)?;
            }
            let kappa = acc.empty_set_mass();
            CombineOut {
                mass: MassFunctionDoc::from_mass(&acc),
                conflict: ConflictDoc {
                    kappa,
                    weight: -(1.0 - kappa).ln(),
                },
            }
        }
    };
    emit(args.output.as_ref(), &out)
}

fn cmd_transform(args: TransformArgs) -> credal::Result<()> {
    let m = load_mass(&args.file)?;
    let p = match args.method {
        TransformMethod::Pignistic => transform::pignistic(&m)?,
        TransformMethod::Relpl => transform::relative_plausibility(&m)?,
        TransformMethod::Relbel => transform::relative_belief(&m)?,
    };
    emit(args.output.as_ref(), &ProbabilityDoc::from_distribution(&p))
}

fn cmd_condition(args: ConditionArgs) -> credal::Result<()> {
    let m = load_mass(&args.file)?;
    let event = m
        .frame()
        .subset_of_labels(args.on.iter().map(String::as_str))?;
    let conditioned = match args.rule {
        ConditionRule::Dempster => combine::dempster_condition(&m, &event)?,
        ConditionRule::Geometric => combine::geometric_condition(&m, &event)?,
    };
    emit(
        args.output.as_ref(),
        &MassFunctionDoc::from_mass(&conditioned),
    )
}

#[derive(Serialize)]
struct VerticesOut {
    frame: Vec<String>,
    /// One distribution per selection of a singleton from each focal
    /// element.
    vertices: Vec<Vec<f64>>,
    /// Distinct extreme points from the permutation enumeration.
    unique_permutation_vertices: Vec<Vec<f64>>,
    permutation_average: Vec<f64>,
}

#[derive(Serialize)]
struct IntervalOut {
    frame: Vec<String>,
    /// Per-element [belief, plausibility].
    intervals: Vec<[f64; 2]>,
}

fn cmd_credal(args: CredalArgs) -> credal::Result<()> {
    let m = load_mass(&args.file)?;
    if args.mode.vertices {
        let vs = geometry::credal_vertices(&m)?;
        let out = VerticesOut {
            frame: m.frame().labels().to_vec(),
            vertices: vs
                .by_selection
                .iter()
                .map(|p| p.values().to_vec())
                .collect(),
            unique_permutation_vertices: vs.unique().iter().map(|p| p.values().to_vec()).collect(),
            permutation_average: vs.permutation_average().values().to_vec(),
        };
        emit(args.output.as_ref(), &out)
    } else {
        let frame = m.frame().clone();
        let intervals: credal::Result<Vec<[f64; 2]>> = (0..frame.size())
            .map(|i| {
                let s = frame.singleton(i);
                Ok([m.belief(&s)?, m.plausibility(&s)?])
            })
            .collect();
        let out = IntervalOut {
            frame: frame.labels().to_vec(),
            intervals: intervals?,
        };
        emit(args.output.as_ref(), &out)
    }
}

#[derive(Serialize)]
struct PartitionOut {
    blocks: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct IndependenceOut {
    independent: bool,
    /// On failure, one block per frame with empty joint intersection.
    witness: Option<Vec<Vec<String>>>,
}

fn cmd_frames(args: FramesArgs) -> credal::Result<()> {
    let (base, frames) = io::parse_family_json(&read_to_string(&args.file)?)?;
    if frames.is_empty() {
        return Err(Error::Document(
            "family document lists no partitions".into(),
        ));
    }
    let describe = |s: &credal::Subset| -> Vec<String> {
        s.iter().map(|i| base.label(i).to_string()).collect()
    };
    match args.op {
        FramesOp::Minref => {
            let (meet, _) = partition::minimal_refinement(&frames)?;
            let out = PartitionOut {
                blocks: meet.blocks().iter().map(describe).collect(),
            };
            emit(args.output.as_ref(), &out)
        }
        FramesOp::Maxcoa => {
            let join = partition::maximal_coarsening(&frames)?;
            let out = PartitionOut {
                blocks: join.blocks().iter().map(describe).collect(),
            };
            emit(args.output.as_ref(), &out)
        }
        FramesOp::Independent => {
            let report = partition::is_independent(&frames)?;
            let witness = report.witness.as_ref().map(|w| {
                w.iter()
                    .zip(frames.iter())
                    .map(|(&b, f)| describe(&f.blocks()[b]))
                    .collect()
            });
            emit(
                args.output.as_ref(),
                &IndependenceOut {
                    independent: report.independent,
                    witness,
                },
            )
        }
    }
}

#[derive(Serialize)]
struct TotalOut {
    total: MassFunctionDoc,
    cells: Vec<CellOut>,
    verified: Option<bool>,
}

#[derive(Serialize)]
struct CellOut {
    prior_focal: Vec<String>,
    selection: Vec<usize>,
    masses: Vec<f64>,
}

fn cmd_totalbel(args: TotalbelArgs, threads: usize) -> credal::Result<()> {
    let problem = io::parse_problem_json(&read_to_string(&args.file)?)?;
    let solution = total::solve(&problem, threads.max(1))?;
    let verified = if args.verify {
        let report = total::verify_total(&solution.total, &problem)?;
        eprintln!(
            "verify: restriction {} | conditionals {} | structure {}",
            if report.restriction_ok { "ok" } else { "FAIL" },
            if report.conditionals.iter().all(|(_, ok)| *ok) {
                "ok"
            } else {
                "FAIL"
            },
            if report.structure_ok { "ok" } else { "FAIL" },
        );
        Some(report.all_ok())
    } else {
        None
    };
    let coarse = problem.refining().source();
    let out = TotalOut {
        total: MassFunctionDoc::from_mass(&solution.total),
        cells: solution
            .cells
            .iter()
            .map(|(focal, cell)| CellOut {
                prior_focal: focal.iter().map(|i| coarse.label(i).to_string()).collect(),
                selection: cell.system.selection.clone(),
                masses: cell.system.solution.clone(),
            })
            .collect(),
        verified,
    };
    emit(args.output.as_ref(), &out)
}

fn cmd_bmr_train(args: BmrTrainArgs, seed: u64) -> credal::Result<()> {
    let training = io::parse_training_csv(&read_to_string(&args.data)?)?;
    let opts = credal::bmr::LearnOptions {
        seed,
        m_theta: args.m_theta,
        weighted_likelihoods: !args.raw_density,
    };
    let model = credal::bmr::learn_model(&training, &args.clusters, &opts)?;
    emit(args.output.as_ref(), &io::ModelDoc::from_model(&model))
}

#[derive(Serialize)]
struct PredictOut {
    point: Vec<f64>,
    intervals: Vec<[f64; 2]>,
    conflict: f64,
    consistency: f64,
    belief: MassFunctionDoc,
    vacuous_features: Vec<usize>,
}

fn cmd_bmr_predict(args: BmrPredictArgs) -> credal::Result<()> {
    let model = io::parse_model_json(&read_to_string(&args.model)?)?;
    let estimate = credal::bmr::predict_belief(&model, &args.features)?;
    let point = credal::bmr::point_estimate(&estimate, &model)?;
    let intervals = credal::bmr::interval_estimate(&estimate, &model)?;
    let out = PredictOut {
        point,
        intervals: intervals.into_iter().map(|(lo, hi)| [lo, hi]).collect(),
        conflict: estimate.conflict,
        consistency: credal::bmr::model_consistency(&model),
        belief: MassFunctionDoc::from_mass(&estimate.mass),
        vacuous_features: estimate.vacuous_features.clone(),
    };
    emit(args.output.as_ref(), &out)
}
