// SPDX-License-Identifier: Apache-2.0
use clap::{Parser, Subcommand};
use cli_service::commands::{self, Report};
use cli_service::pipeline::Options;
use cli_service::{Config, LeError, SessionService};
use std::io::BufRead;
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "le", version, about = "Compiler, linker and simulator for LE programs")]
struct Cli {
    /// Machine readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Configuration file (default: ./le.toml when present).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Extra search directory for callees.
    #[arg(short = 'I', global = true)]
    include: Vec<PathBuf>,
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compile each module of a file to `<Module>.lec`.
    Compile {
        file: PathBuf,
        #[arg(long)]
        module: Option<String>,
        /// Keep compiled callees as run instances.
        #[arg(long)]
        no_link: bool,
        /// Inline callees from source even when a `.lec` exists.
        #[arg(long)]
        inline: bool,
        #[arg(short, long)]
        out_dir: Option<PathBuf>,
    },
    /// Link compiled units.
    Link {
        files: Vec<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Define all inputs, simplify, write `.lec` and `.blif`.
    Finalize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        blif: Option<PathBuf>,
        #[arg(long, default_value = "bdd")]
        canon: String,
    },
    /// Simulate a unit or source file.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        module: Option<String>,
        /// Input file, one instant per line.
        #[arg(long, conflicts_with = "interactive")]
        inputs: Option<PathBuf>,
        /// Read instants from standard input.
        #[arg(long)]
        interactive: bool,
    },
    /// Check that an alarm output is never emitted.
    Check {
        file: PathBuf,
        #[arg(long)]
        module: Option<String>,
        #[arg(long, default_value = "ERROR")]
        alarm: String,
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
    },
    /// Run a source program on one engine.
    Interpret {
        file: PathBuf,
        #[arg(long)]
        module: Option<String>,
        #[arg(long, default_value = "behavioral")]
        engine: String,
        #[arg(long)]
        inputs: Option<PathBuf>,
    },
    /// Start the session service.
    Serve {
        #[arg(long)]
        bind: Option<String>,
        #[arg(long)]
        port: Option<u16>,
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
}

fn config(cli: &Cli) -> Result<Config, LeError> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None if std::path::Path::new("le.toml").is_file() => Config::load("le.toml".as_ref())?,
        None => Config::default(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn inputs(path: &Option<PathBuf>) -> Result<Vec<cli_service::engine::Inputs>, LeError> {
    match path {
        Some(p) => commands::parse_input_file(&cli_service::pipeline::read(p)?),
        None => Ok(Vec::new()),
    }
}

fn interactive(file: &std::path::Path, module: Option<&str>, opts: &Options, json: bool) -> Result<Report, LeError> {
    let unit = commands::load_executable(file, module, opts)?;
    let sim = cli_service::pipeline::simulator_of(&unit)?;
    let mut st = sim.initial_state();
    for line in std::io::stdin().lock().lines() {
        let line = line.map_err(|e| LeError::Io { path: "<stdin>".into(), msg: e.to_string() })?;
        let i = simulator::parse_inputs_line(&line).map_err(LeError::Usage)?;
        let (r, next) = sim.step(&st, &i)?;
        st = next;
        if json {
            println!("{}", cli_service::session::step_json(&r));
        } else {
            println!("{}", simulator::format_step(&r));
        }
    }
    Ok(Report { text: String::new(), json: serde_json::Value::Null, code: 0 })
}

fn run(cli: &Cli) -> Result<Report, LeError> {
    let cfg = config(cli)?;
    let mut opts = Options { search_paths: cli.include.clone(), ..Default::default() };
    opts.search_paths.extend(cfg.search_paths.iter().cloned());
    match &cli.cmd {
        Cmd::Compile { file, module, no_link, inline, out_dir } => {
            opts.no_link = *no_link;
            opts.prefer_source = *inline;
            let dir = out_dir.clone().or(cfg.output_dir.clone());
            commands::compile(file, module.as_deref(), dir.as_deref(), &opts, cli.verbose)
        }
        Cmd::Link { files, output } => commands::link_files(files, output, &opts, cli.verbose),
        Cmd::Finalize { file, output, blif, canon } => {
            commands::finalize_file(file, output.as_deref(), blif.as_deref(), canon, &opts)
        }
        Cmd::Simulate { file, module, inputs: inp, interactive: true } => {
            let _ = inp;
            interactive(file, module.as_deref(), &opts, cli.json)
        }
        Cmd::Simulate { file, module, inputs: inp, .. } => commands::simulate(file, module.as_deref(), &inputs(inp)?, &opts),
        Cmd::Check { file, module, alarm, max_states } => commands::check(file, module.as_deref(), alarm, *max_states, &opts),
        Cmd::Interpret { file, module, engine, inputs: inp } => {
            commands::interpret(file, module.as_deref(), engine, &inputs(inp)?, &opts)
        }
        Cmd::Serve { bind, port, static_dir } => {
            let mut svc = cfg.service.clone();
            if let Some(b) = bind {
                svc.bind = b.clone();
            }
            if let Some(p) = port {
                svc.port = *p;
            }
            let dir = static_dir.clone().or(svc.static_dir.clone());
            let addr = format!("{}:{}", svc.bind, svc.port);
            let service = Arc::new(SessionService::new(opts));
            let rt = tokio::runtime::Runtime::new().map_err(|e| LeError::Io { path: addr.clone(), msg: e.to_string() })?;
            rt.block_on(cli_service::server::serve(service, &addr, dir))
                .map_err(|e| LeError::Io { path: addr, msg: e.to_string() })?;
            Ok(Report { text: String::new(), json: serde_json::Value::Null, code: 0 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                if !r.json.is_null() {
                    let mut v = r.json;
                    v["ok"] = serde_json::Value::Bool(true);
                    println!("{v}");
                }
            } else {
                print!("{}", r.text);
            }
            std::process::exit(r.code);
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({ "ok": false, "error": e.to_json() }));
            } else {
                eprintln!("error: {e}");
            }
            std::process::exit(e.exit_code());
        }
    }
}
