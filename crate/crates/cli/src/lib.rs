//! Library side of the `commutant` command: argument types, dispatch and reports.

pub mod builtins;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commutant_core::{
    analyze_with, noiseless_components, verify_noiseless, verify_structure, AnalyzeOptions, Channel,
    ChannelSpec, Error, LinkMethod, MinimalStrategy, Tolerance,
};

use report::{to_json, AnalysisReport, NoiselessCheck, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NON_UNITAL: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::NotUnital { .. }) => EXIT_NON_UNITAL,
            _ => EXIT_INPUT,
        }
    }

    /// Message for stderr; non-unital input points at the unitization route.
    pub fn message(&self) -> String {
        match self {
            CliError::Core(e @ Error::NotUnital { .. }) => format!(
                "error: {e}\nthe analysis needs a unital channel; for arbitrary normal operators, \
                 build one with commutant_core::channel::unitize (unitize path), which keeps the commutant"
            ),
            other => format!("error: {other}"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "commutant", version, about = "Noise commutants and noiseless subsystems of unital channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Commutant, Wedderburn structure and diagnostics of a channel.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Include matrices (JSON only).
        #[arg(long)]
        full: bool,
    },
    /// Structure diagnostics plus randomized noiseless round trips.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        repetitions: usize,
    },
    /// Available builtin channels and their parameters.
    ListBuiltins,
    /// Writes a builtin channel as a channel spec JSON file.
    Export {
        /// Builtin name, optionally `name:arg`.
        builtin: String,
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        /// Output path; stdout when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Paper,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LinkArg {
    Corner,
    Subset,
    Signature,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Channel spec JSON file.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    pub input: Option<PathBuf>,
    /// Builtin channel, e.g. `collective:3` or `phase-damping`.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Builtin parameter, e.g. `p=0.25`.
    #[arg(long = "param", value_name = "K=V")]
    pub params: Vec<String>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol_rank: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol_cluster: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol_zero: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = StrategyArg::Generic)]
    pub strategy: StrategyArg,
    #[arg(long, value_enum, default_value_t = LinkArg::Corner)]
    pub link_method: LinkArg,
    /// Worker threads for the linear algebra backend (hint; 0 = all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

impl Common {
    pub fn tolerance(&self) -> Result<Tolerance, CliError> {
        Ok(Tolerance::new(self.tol_rank, self.tol_cluster, self.tol_zero, self.seed)?)
    }

    pub fn options(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            strategy: match self.strategy {
                StrategyArg::Paper => MinimalStrategy::PaperRecursive,
                StrategyArg::Generic => MinimalStrategy::RandomizedGeneric,
            },
            link_method: match self.link_method {
                LinkArg::Corner => LinkMethod::Corner,
                LinkArg::Subset => LinkMethod::SubsetEnumeration,
                LinkArg::Signature => LinkMethod::Signature,
            },
        }
    }

    pub fn channel(&self, tol: &Tolerance) -> Result<Channel, CliError> {
        if let Some(b) = &self.builtin {
            return builtins::build(b, &self.params);
        }
        if !self.params.is_empty() {
            return Err(CliError::Usage("--param only applies to --builtin".into()));
        }
        let path = self.input.as_ref().expect("clap requires input or builtin");
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let spec = ChannelSpec::from_json(&text)?;
        let ch = spec.to_channel(tol)?;
        Ok(match spec.name {
            Some(_) => ch,
            None => ch.with_name(path.display().to_string()),
        })
    }

    fn apply_threads(&self) {
        if let Some(n) = self.threads {
            let par = if n == 1 { faer::Par::Seq } else { faer::Par::rayon(n) };
            faer::set_global_parallelism(par);
        }
    }
}

pub fn analysis(common: &Common, full: bool) -> Result<AnalysisReport, CliError> {
    common.apply_threads();
    let tol = common.tolerance()?;
    let ch = common.channel(&tol)?;
    let s = analyze_with(&ch, &tol, common.options())?;
    let diagnostics = verify_structure(&ch, &s, &tol);
    Ok(AnalysisReport::new(&ch, &s, diagnostics, &tol, full))
}

pub fn verification(common: &Common, trials: usize, repetitions: usize) -> Result<VerificationReport, CliError> {
    common.apply_threads();
    let tol = common.tolerance()?;
    let ch = common.channel(&tol)?;
    let s = analyze_with(&ch, &tol, common.options())?;
    let diagnostics = verify_structure(&ch, &s, &tol);
    let analysis = AnalysisReport::new(&ch, &s, diagnostics, &tol, false);
    let mut checks = Vec::new();
    for nc in noiseless_components(&s).into_iter().filter(|c| c.is_usable()) {
        let report = verify_noiseless(&ch, &nc, trials, repetitions, &tol)?;
        checks.push(NoiselessCheck {
            component_index: nc.component_index,
            logical_dim: nc.logical_dim,
            cofactor_dim: nc.cofactor_dim,
            report,
        });
    }
    let note = if analysis.commutant_dim == 1 {
        Some("scalar commutant: no noiseless components".to_owned())
    } else if checks.is_empty() {
        Some("no component has multiplicity ≥ 2: no noiseless components".to_owned())
    } else {
        None
    };
    let passed = analysis.all_pass() && checks.iter().all(|c| c.report.passed);
    Ok(VerificationReport {
        analysis,
        noiseless_checks: checks,
        note,
        passed,
    })
}

pub fn builtin_table() -> String {
    let rows = builtins::catalogue();
    let mut out = format!("{:<22} {:<6} {:<28} {:<8} {}\n", "name", "param", "bounds", "default", "description");
    for b in rows {
        out.push_str(&format!(
            "{:<22} {:<6} {:<28} {:<8} {}\n",
            b.name,
            b.parameter,
            b.bounds,
            b.default.as_deref().unwrap_or("-"),
            b.description
        ));
    }
    out.push_str("syntax: --builtin name:arg or --builtin name --param k=v\n");
    out
}

/// Runs a parsed command, writing the report to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = dispatch(cli, out);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", e.message());
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let io_err = |source| CliError::Io {
        path: "<stdout>".into(),
        source,
    };
    match cli.command {
        Command::Analyze { common, full } => {
            let report = analysis(&common, full)?;
            let text = match common.format {
                Format::Json => to_json(&report),
                Format::Text => report.to_text(),
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            common,
            trials,
            repetitions,
        } => {
            let report = verification(&common, trials, repetitions)?;
            let text = match common.format {
                Format::Json => to_json(&report),
                Format::Text => report.to_text(),
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(if report.passed { EXIT_OK } else { EXIT_INPUT })
        }
        Command::ListBuiltins => {
            out.write_all(builtin_table().as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Export {
            builtin,
            params,
            output,
        } => {
            let ch = builtins::build(&builtin, &params)?;
            let json = ChannelSpec::from_channel(&ch).to_json() + "\n";
            match output {
                Some(path) => fs::write(&path, json).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?,
                None => out.write_all(json.as_bytes()).map_err(io_err)?,
            }
            Ok(EXIT_OK)
        }
    }
}
