use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cvcluster::cluster::ClusterKind;
use cvcluster::scenario::{
    run_scenario, run_sweep, verify_decompositions, GraphConfig, JitterMonteCarlo, LossPlacement,
    NetworkChoice, OutputFormat, PerMode, ScenarioConfig, SweepAxis, SweepSpec,
};
use cvcluster::Error;

/// Simulate four-mode continuous-variable cluster states built from squeezed
/// light and beam-splitter networks.
#[derive(Parser)]
#[command(name = "cvcluster", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and print its report.
    Simulate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Attach the element-program check to the report.
        #[arg(long)]
        verify_decomposition: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Vary one scalar over a grid and print a CSV table.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// squeezing_db, antisqueezing_db, loss (eta) or jitter (sigma).
        #[arg(long)]
        axis: String,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Compare the element programs with the network matrices.
    VerifyDecompositions {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Placement {
    Pre,
    Post,
}

#[derive(Args)]
struct ScenarioArgs {
    /// JSON scenario file; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// linear4, square4, tshape4 or a netlist file.
    #[arg(long)]
    network: Option<String>,
    /// Graph for the nullifiers: a named graph or one-based edges `1-2,2-3`.
    #[arg(long)]
    graph: Option<String>,
    /// One value, or one per mode separated by commas.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_values)]
    squeezing_db: Option<PerMode>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_values)]
    antisqueezing_db: Option<PerMode>,
    /// Transmissivity eta.
    #[arg(long, value_parser = parse_values)]
    loss: Option<PerMode>,
    #[arg(long, value_enum)]
    loss_placement: Option<Placement>,
    /// Phase-jitter standard deviation in radians.
    #[arg(long, value_parser = parse_values)]
    jitter: Option<PerMode>,
    /// Sample the jitter with a seeded generator instead of the closed form.
    #[arg(long, num_args = 2, value_names = ["SAMPLES", "SEED"])]
    jitter_mc: Option<Vec<u64>>,
    /// Skip the inseparability witness.
    #[arg(long)]
    no_witness: bool,
}

fn parse_values(s: &str) -> Result<PerMode, String> {
    let values = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match values.as_slice() {
        [v] => PerMode::Uniform(*v),
        _ => PerMode::Each(values),
    })
}

fn parse_graph(s: &str) -> Result<GraphConfig, Error> {
    if let Some(kind) = ClusterKind::from_name(s) {
        return Ok(GraphConfig::Named(kind));
    }
    let mut edges = Vec::new();
    for pair in s.split(',').filter(|p| !p.trim().is_empty()) {
        let parsed = pair
            .split_once('-')
            .and_then(|(a, b)| Some([a.trim().parse().ok()?, b.trim().parse().ok()?]));
        match parsed {
            Some(edge) => edges.push(edge),
            None => {
                return Err(Error::Config {
                    field: "graph".into(),
                    message: format!("`{pair}` is not an edge like 1-2"),
                })
            }
        }
    }
    Ok(GraphConfig::Custom { edges, nodes: None })
}

fn load_config(path: &Path) -> Result<ScenarioConfig, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let mut cfg = ScenarioConfig::from_json(&text)?;
    // netlists named in a config file are relative to that file
    if let NetworkChoice::Netlist { netlist } = &mut cfg.network {
        if netlist.is_relative() {
            if let Some(dir) = path.parent() {
                *netlist = dir.join(&*netlist);
            }
        }
    }
    Ok(cfg)
}

impl ScenarioArgs {
    fn build(self) -> Result<ScenarioConfig, Error> {
        let mut cfg = match (&self.config, &self.network) {
            (Some(path), _) => load_config(path)?,
            (None, Some(_)) => ScenarioConfig::named(ClusterKind::Linear, 0.0),
            (None, None) => {
                return Err(Error::Config {
                    field: "network".into(),
                    message: "pass --network or --config".into(),
                })
            }
        };
        if let Some(net) = self.network {
            cfg.network = match ClusterKind::from_name(&net) {
                Some(kind) => NetworkChoice::Named(kind),
                None => NetworkChoice::Netlist {
                    netlist: net.into(),
                },
            };
        }
        if let Some(g) = self.graph {
            cfg.graph = Some(parse_graph(&g)?);
        }
        if let Some(v) = self.squeezing_db {
            cfg.squeezing_db = v;
        }
        if let Some(v) = self.antisqueezing_db {
            cfg.antisqueezing_db = Some(v);
        }
        if let Some(v) = self.loss {
            cfg.loss = v;
        }
        if let Some(p) = self.loss_placement {
            cfg.loss_placement = match p {
                Placement::Pre => LossPlacement::Pre,
                Placement::Post => LossPlacement::Post,
            };
        }
        if let Some(v) = self.jitter {
            cfg.jitter = v;
        }
        if let Some(mc) = self.jitter_mc {
            cfg.jitter_mc = Some(JitterMonteCarlo {
                samples: mc[0] as usize,
                seed: mc[1],
            });
        }
        if self.no_witness {
            cfg.witness = false;
        }
        Ok(cfg)
    }
}

enum Failure {
    Sim(Error),
    Output(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Sim(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Output(e)
    }
}

fn emit(text: &str) -> io::Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    out.flush()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Simulate {
            scenario,
            verify_decomposition,
            format,
        } => {
            let mut cfg = scenario.build()?;
            cfg.verify_decomposition |= verify_decomposition;
            if let Some(f) = format {
                cfg.format = match f {
                    Format::Json => OutputFormat::Json,
                    Format::Text => OutputFormat::Text,
                };
            }
            let report = run_scenario(&cfg)?;
            match cfg.format {
                OutputFormat::Json => emit(&report.to_json())?,
                OutputFormat::Text => emit(&report.to_text())?,
            }
        }
        Command::Sweep {
            scenario,
            axis,
            from,
            to,
            steps,
        } => {
            let axis: SweepAxis = axis.parse()?;
            let cfg = scenario.build()?;
            let table = run_sweep(
                &cfg,
                &SweepSpec {
                    axis,
                    from,
                    to,
                    steps,
                },
            )?;
            emit(&table.to_csv())?;
        }
        Command::VerifyDecompositions { format } => {
            let report = verify_decompositions();
            match format {
                Format::Json => emit(&report.to_json())?,
                Format::Text => emit(&report.to_text())?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Sim(e @ Error::UnsupportedGraph(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Sim(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Output(e)) => {
            eprintln!("error: writing output: {e}");
            ExitCode::from(1)
        }
    }
}
