//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use serde_json::json;

use crate::engine::{Engine, TraceEvent, DEFAULT_RECURSION_LIMIT};
use crate::error::{Error, Result};
use crate::io::{builtin, read_param_file, Loaded};
use crate::oracle::{compare_three_block, sample_three_block, ThreeBlock};
use crate::packets::{admissible_orders, enumerate_with, EnumerateOptions};
use crate::stack::render;
use crate::transforms::reorder;
use crate::types::{AdmissibleOrder, Sign, SignedData};

#[derive(Parser, Debug)]
#[command(
    name = "apacket",
    version,
    about = "Nonvanishing of Arthur packet members for classical groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether one (l, eta) gives a nonzero representation.
    Decide {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        data: DataArgs,
        /// Print the reduction trace.
        #[arg(long)]
        trace: bool,
    },
    /// Count the packet.
    Size {
        #[command(flatten)]
        input: Input,
        /// Count under every admissible order and check they agree.
        #[arg(long)]
        all_orders: bool,
    },
    /// List the nonvanishing (l, eta), sorted.
    Enumerate {
        #[command(flatten)]
        input: Input,
    },
    /// Carry (l, eta) to another admissible order.
    Reorder {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        data: DataArgs,
        /// Target order, same syntax as --order.
        #[arg(long)]
        to_order: String,
    },
    /// Compare the engine with the closed forms for three blocks.
    OracleCompare {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 12)]
        max_a: i64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Args, Debug)]
pub struct Input {
    /// JSON parameter file.
    #[arg(long, conflicts_with = "example")]
    pub file: Option<PathBuf>,
    /// Built-in example: moeglin-s8, two-fiber, elementary.
    #[arg(long)]
    pub example: Option<String>,
    /// Order override: occurrence indices, greatest first, ';' between fibers.
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_RECURSION_LIMIT)]
    pub recursion_limit: usize,
}

#[derive(Args, Debug)]
pub struct DataArgs {
    /// Comma-separated l values by occurrence.
    #[arg(long)]
    pub l: String,
    /// Comma-separated signs by occurrence: + - 1 -1.
    #[arg(long, allow_hyphen_values = true)]
    pub eta: String,
}

impl Input {
    fn load(&self) -> Result<Option<Loaded>> {
        match (&self.file, &self.example) {
            (Some(p), _) => read_param_file(p).map(Some),
            (None, Some(name)) => builtin(name).map(Some),
            (None, None) => Ok(None),
        }
    }

    fn require(&self) -> Result<(Loaded, AdmissibleOrder)> {
        let loaded = self
            .load()?
            .ok_or_else(|| Error::Parse("give --file or --example".into()))?;
        let order = match &self.order {
            Some(s) => AdmissibleOrder::checked(&loaded.psi, parse_order(s)?)?,
            None => loaded.order_or_default()?,
        };
        Ok((loaded, order))
    }
}

pub fn parse_order(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .map(|part| {
            part.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad order entry {t:?}")))
                })
                .collect()
        })
        .collect()
}

pub fn parse_data(args: &DataArgs) -> Result<SignedData> {
    let l = args
        .l
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad l value {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let eta = args
        .eta
        .split(',')
        .map(|t| Sign::parse(t.trim()).ok_or_else(|| Error::Parse(format!("bad sign {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(SignedData::new(l, eta))
}

fn fmt_data(d: &SignedData) -> String {
    let l: Vec<String> = d.l.iter().map(|x| x.to_string()).collect();
    let e: Vec<String> = d.eta.iter().map(|s| s.symbol().to_string()).collect();
    format!("l=[{}] eta=[{}]", l.join(","), e.join(","))
}

fn fmt_order(o: &AdmissibleOrder) -> String {
    let parts: Vec<String> = o
        .fibers()
        .iter()
        .map(|f| {
            f.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    parts.join(";")
}

fn describe(ev: &TraceEvent) -> String {
    match ev {
        TraceEvent::Swap { kind, lower, after } => {
            format!("swap {kind:?} at {lower}: {}", render(after))
        }
        TraceEvent::Step(step) => {
            let subs: Vec<String> = step.subproblems.iter().map(|s| render(&s.stack)).collect();
            format!(
                "{:?}: {} => {}",
                step.kind,
                render(&step.before),
                subs.join(" ; ")
            )
        }
        TraceEvent::FastFail { stack, lower } => format!("fails at {lower}: {}", render(stack)),
        TraceEvent::Chunk {
            chunk,
            nonvanishing,
        } => format!("far chunk {} -> {nonvanishing}", render(chunk)),
        TraceEvent::GoodShape {
            stack,
            nonvanishing,
        } => format!("good shape {} -> {nonvanishing}", render(stack)),
        TraceEvent::Leaf { stack } => format!("leaf {}", render(stack)),
    }
}

fn verdict_word(v: bool) -> &'static str {
    if v {
        "NONVANISHING"
    } else {
        "VANISHING"
    }
}

fn emit(out: &mut dyn Write, s: impl std::fmt::Display) -> Result<()> {
    writeln!(out, "{s}").map_err(|e| Error::InvalidData(format!("write failed: {e}")))
}

/// Runs one command. `Ok(false)` means a check inside the command failed.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::Decide { input, data, trace } => {
            let (loaded, order) = input.require()?;
            let d = parse_data(data)?;
            let mut engine = Engine::with_recursion_limit(input.recursion_limit);
            let v = engine.decide(&loaded.psi, &order, &d)?;
            match input.format {
                Format::Json => {
                    let mut obj = json!({ "nonvanishing": v.nonvanishing });
                    if *trace {
                        obj["trace"] = serde_json::to_value(&v.trace).unwrap_or_default();
                    }
                    emit(out, obj)?;
                }
                Format::Table => {
                    if *trace {
                        for ev in &v.trace {
                            emit(out, describe(ev))?;
                        }
                    }
                    emit(out, verdict_word(v.nonvanishing))?;
                }
            }
            Ok(true)
        }
        Command::Size { input, all_orders } => {
            let (loaded, order) = input.require()?;
            let opts = EnumerateOptions {
                jobs: input.jobs,
                recursion_limit: input.recursion_limit,
            };
            if !*all_orders {
                let n = enumerate_with(&loaded.psi, &order, opts)?.members.len();
                match input.format {
                    Format::Json => emit(out, json!({ "size": n }))?,
                    Format::Table => emit(out, n)?,
                }
                return Ok(true);
            }
            let orders = admissible_orders(&loaded.psi, 10_000)?;
            let mut sizes = Vec::new();
            for o in &orders {
                sizes.push((
                    fmt_order(o),
                    enumerate_with(&loaded.psi, o, opts)?.members.len(),
                ));
            }
            let agree = sizes.windows(2).all(|w| w[0].1 == w[1].1);
            match input.format {
                Format::Json => {
                    let list: Vec<_> = sizes
                        .iter()
                        .map(|(o, n)| json!({ "order": o, "size": n }))
                        .collect();
                    emit(out, json!({ "orders": list, "agree": agree }))?;
                }
                Format::Table => {
                    for (o, n) in &sizes {
                        emit(out, format!("order {o}: {n}"))?;
                    }
                    if agree {
                        emit(
                            out,
                            format!(
                                "all {} orders agree: {}",
                                sizes.len(),
                                sizes.first().map_or(0, |s| s.1)
                            ),
                        )?;
                    } else {
                        emit(out, "orders disagree")?;
                    }
                }
            }
            Ok(agree)
        }
        Command::Enumerate { input } => {
            let (loaded, order) = input.require()?;
            let opts = EnumerateOptions {
                jobs: input.jobs,
                recursion_limit: input.recursion_limit,
            };
            let members = enumerate_with(&loaded.psi, &order, opts)?.members;
            match input.format {
                Format::Json => emit(out, serde_json::to_string(&members).unwrap_or_default())?,
                Format::Table => {
                    for d in &members {
                        emit(out, fmt_data(d))?;
                    }
                }
            }
            Ok(true)
        }
        Command::Reorder {
            input,
            data,
            to_order,
        } => {
            let (loaded, order) = input.require()?;
            let d = parse_data(data)?;
            let to = AdmissibleOrder::checked(&loaded.psi, parse_order(to_order)?)?;
            let res = reorder(&loaded.psi, &order, &to, &d)?;
            match (input.format, res) {
                (Format::Json, r) => emit(out, json!({ "nonvanishing": r.is_some(), "data": r }))?,
                (Format::Table, Some(r)) => emit(out, fmt_data(&r))?,
                (Format::Table, None) => emit(out, "VANISHING")?,
            }
            Ok(true)
        }
        Command::OracleCompare {
            input,
            max_a,
            samples,
        } => {
            let mut engine = Engine::with_recursion_limit(input.recursion_limit);
            let family: Vec<ThreeBlock> = match input.load()? {
                Some(loaded) => {
                    let psi = &loaded.psi;
                    if psi.len() != 3 || psi.fibers().len() != 1 {
                        return Err(Error::Hypothesis(
                            "oracle-compare needs three blocks of one rho".into(),
                        ));
                    }
                    let b = |i: usize| psi.block(i);
                    let int = |h: crate::halfint::HalfInt| {
                        h.to_int().ok_or_else(|| {
                            Error::Hypothesis("oracle-compare needs integral blocks".into())
                        })
                    };
                    if b(0).zeta != Sign::Plus
                        || b(1).zeta != Sign::Minus
                        || b(2).zeta != Sign::Plus
                    {
                        return Err(Error::Hypothesis(
                            "oracle-compare needs zeta = +, -, + for blocks 0, 1, 2".into(),
                        ));
                    }
                    vec![ThreeBlock::new(
                        int(b(0).A)?,
                        int(b(0).B)?,
                        int(b(1).A)?,
                        int(b(1).B)?,
                        int(b(2).A)?,
                        int(b(2).B)?,
                    )?]
                }
                None => {
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(input.seed);
                    (0..*samples)
                        .map(|_| sample_three_block(&mut rng, *max_a))
                        .collect()
                }
            };
            let mut cases = 0;
            let mut bad = Vec::new();
            for t in &family {
                let c = compare_three_block(t, &mut engine)?;
                cases += c.cases;
                for d in c.mismatches {
                    bad.push((*t, d));
                }
            }
            match input.format {
                Format::Json => {
                    let list: Vec<_> = bad
                        .iter()
                        .map(|(t, d)| json!({ "blocks": t, "data": d }))
                        .collect();
                    emit(
                        out,
                        json!({ "instances": family.len(), "cases": cases, "mismatches": list }),
                    )?;
                }
                Format::Table => {
                    for (t, d) in &bad {
                        emit(out, format!("mismatch {t:?} {}", fmt_data(d)))?;
                    }
                    emit(out, format!("{} instances, {cases} cases", family.len()))?;
                    emit(out, format!("{} mismatches", bad.len()))?;
                }
            }
            Ok(bad.is_empty())
        }
    }
}

/// Parses `args`, runs, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
