use std::cmp::Ordering;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use narch_core::rl::{
    discounted_return, epsilon_greedy_run, mean, Arm, DynamicApprox, ExactOmega, Mode, RewardModel,
    RewardScheme, RewardValue, RunConfig, ScriptedRun, StaticApprox,
};
use narch_core::Rational;
use serde::Serialize;

use crate::args::BanditArgs;
use crate::error::{CliError, CliResult};
use crate::output;

pub const TRACE_FILE: &str = "trace.csv";
pub const SUMMARY_FILE: &str = "summary.json";
const HEADER: [&str; 6] = [
    "step",
    "arm",
    "reward",
    "red_mean",
    "blue_mean",
    "preferred",
];

#[derive(Debug, Serialize)]
struct PerArm<T> {
    red: T,
    blue: T,
}

#[derive(Debug, Serialize)]
struct Summary {
    scheme: RewardScheme,
    mode: Mode,
    steps: u64,
    epsilon: Rational,
    seed: u64,
    discount: Option<Rational>,
    flip_step: Option<u64>,
    final_preference: Arm,
    pulls: PerArm<u64>,
    sums: PerArm<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discounted_return: Option<serde_json::Value>,
}

struct Outcome {
    flip_step: Option<u64>,
    final_preference: Arm,
    pulls: PerArm<u64>,
    sums: PerArm<String>,
    discounted_return: Option<serde_json::Value>,
}

pub fn resolve_config(args: &BanditArgs) -> CliResult<RunConfig> {
    let config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(CliError::io(path))?;
            serde_json::from_str(&text).map_err(CliError::input)?
        }
        None => RunConfig {
            scheme: args.scheme.clone().expect("required by clap"),
            mode: args.mode.expect("required by clap"),
            steps: args.steps.expect("required by clap"),
            epsilon: args.epsilon.clone().unwrap_or_default(),
            seed: args.seed.unwrap_or_default(),
            discount: args.discount.clone(),
        },
    };
    config.validate()?;
    if config.mode == Mode::Scripted && config.epsilon != Rational::default() {
        return Err(CliError::Input(
            "epsilon applies only to egreedy mode".into(),
        ));
    }
    Ok(config)
}

/// Runs the configured experiment and writes `trace.csv` and `summary.json`
/// into `out`.
pub fn run(config: &RunConfig, out: &Path) -> CliResult<()> {
    fs::create_dir_all(out).map_err(CliError::io(out))?;
    let trace_path = out.join(TRACE_FILE);
    let file = File::create(&trace_path).map_err(CliError::io(&trace_path))?;
    let mut trace = Trace::new(BufWriter::new(file), trace_path)?;
    let outcome = match &config.scheme {
        RewardScheme::ExactLaurent => dispatch(config, &ExactOmega, &mut trace),
        RewardScheme::StaticApprox(m) => dispatch(config, &StaticApprox(m.clone()), &mut trace),
        RewardScheme::DynamicApprox(m) => dispatch(config, &DynamicApprox(m.clone()), &mut trace),
    }?;
    trace.finish()?;

    let summary = Summary {
        scheme: config.scheme.clone(),
        mode: config.mode,
        steps: config.steps,
        epsilon: config.epsilon.clone(),
        seed: config.seed,
        discount: config.discount.clone(),
        flip_step: outcome.flip_step,
        final_preference: outcome.final_preference,
        pulls: outcome.pulls,
        sums: outcome.sums,
        discounted_return: outcome.discounted_return,
    };
    let summary_path = out.join(SUMMARY_FILE);
    fs::write(&summary_path, output::json(&summary)?).map_err(CliError::io(&summary_path))
}

fn dispatch<M: RewardModel>(
    config: &RunConfig,
    model: &M,
    trace: &mut Trace,
) -> CliResult<Outcome> {
    match config.mode {
        Mode::Scripted => scripted(config, model, trace),
        Mode::EpsilonGreedy => greedy(config, model, trace),
    }
}

struct Trace {
    writer: csv::Writer<BufWriter<File>>,
    path: PathBuf,
}

impl Trace {
    fn new(sink: BufWriter<File>, path: PathBuf) -> CliResult<Self> {
        let mut trace = Trace {
            writer: output::csv_writer(sink),
            path,
        };
        trace.row(HEADER)?;
        Ok(trace)
    }

    fn row<I>(&mut self, fields: I) -> CliResult<()>
    where
        I: IntoIterator,
        I::Item: AsRef<[u8]>,
    {
        self.writer
            .write_record(fields)
            .map_err(|e| self.io_error(e))
    }

    fn finish(self) -> CliResult<()> {
        let Trace { writer, path } = self;
        let mut inner = writer.into_inner().map_err(|e| CliError::Io {
            path: path.clone(),
            source: std::io::Error::other(e.to_string()),
        })?;
        inner.flush().map_err(CliError::io(path))
    }

    fn io_error(&self, e: csv::Error) -> CliError {
        let source = match e.into_kind() {
            csv::ErrorKind::Io(source) => source,
            other => std::io::Error::other(format!("{other:?}")),
        };
        CliError::Io {
            path: self.path.clone(),
            source,
        }
    }
}

fn mean_text<V: RewardValue>(sum: &V, n: u64) -> String {
    if n == 0 {
        "-".to_owned()
    } else {
        mean(sum, n).to_string()
    }
}

fn running_discount<V: RewardValue>(
    total: &mut V,
    weight: &mut Rational,
    reward: &V,
    gamma: &Rational,
) {
    total.add_value(&reward.scale(weight));
    *weight *= gamma;
}

/// Presses both buttons once per step. The `arm` column reads `both` and
/// `reward` holds blue's payout, since red always pays one unit.
fn scripted<M: RewardModel>(
    config: &RunConfig,
    model: &M,
    trace: &mut Trace,
) -> CliResult<Outcome> {
    let mut flip_step = None;
    let mut preferred = Arm::Red;
    let mut last = None;
    let mut discounted = config
        .discount
        .as_ref()
        .map(|_| (M::Value::zero(), M::Value::zero(), Rational::from(1)));
    for row in ScriptedRun::new(model).take(config.steps as usize) {
        preferred = if row.blue_vs_red == Ordering::Greater {
            Arm::Blue
        } else {
            Arm::Red
        };
        if flip_step.is_none() && row.blue_vs_red == Ordering::Less {
            flip_step = Some(row.n);
        }
        if let (Some((red, blue, weight)), Some(gamma)) = (&mut discounted, &config.discount) {
            let mut red_weight = weight.clone();
            running_discount(red, &mut red_weight, &model.unit(), gamma);
            running_discount(blue, weight, &row.blue_reward, gamma);
        }
        trace.row([
            row.n.to_string(),
            "both".to_owned(),
            row.blue_reward.to_string(),
            mean_text(&row.red_sum, row.n),
            mean_text(&row.blue_sum, row.n),
            preferred.to_string(),
        ])?;
        last = Some(row);
    }
    let last = last.expect("steps validated positive");
    Ok(Outcome {
        flip_step,
        final_preference: preferred,
        pulls: PerArm { red: last.n, blue: last.n },
        sums: PerArm {
            red: last.red_sum.to_string(),
            blue: last.blue_sum.to_string(),
        },
        discounted_return: discounted.map(|(red, blue, _)| {
            serde_json::json!({ "red": red.to_string(), "blue": blue.to_string() })
        }),
    })
}

fn greedy<M: RewardModel>(config: &RunConfig, model: &M, trace: &mut Trace) -> CliResult<Outcome> {
    let run = epsilon_greedy_run(config.steps, &config.epsilon, config.seed, model);
    let undefined = || "-".to_owned();
    for row in &run.trace {
        trace.row([
            row.step.to_string(),
            row.arm.to_string(),
            row.reward.to_string(),
            row.red_mean
                .as_ref()
                .map_or_else(undefined, ToString::to_string),
            row.blue_mean
                .as_ref()
                .map_or_else(undefined, ToString::to_string),
            row.preferred.to_string(),
        ])?;
    }
    Ok(Outcome {
        flip_step: run.flip_step(),
        final_preference: run.final_greedy,
        pulls: PerArm {
            red: run.pulls[0],
            blue: run.pulls[1],
        },
        sums: PerArm {
            red: run.sums[0].to_string(),
            blue: run.sums[1].to_string(),
        },
        discounted_return: config.discount.as_ref().map(|gamma| {
            serde_json::json!({ "agent": discounted_return(&run.rewards, gamma).to_string() })
        }),
    })
}
