//! `strideq` command-line front end.
//!
//! Exit codes: 0 success, 1 unreadable, malformed or invalid circuit file,
//! 2 runtime failure (qubit ceiling, bind failure).

mod render;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use strideq_core::circuit::{RunError, RunOptions, DEFAULT_MAX_QUBITS};
use strideq_core::{parse, run_with, Circuit};
use strideq_service::ServiceConfig;

#[derive(Parser)]
#[command(name = "strideq", version, about = "State-vector quantum circuit simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit file and print the result.
    Run {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
        #[arg(long, value_enum, default_value_t = Format::Probs)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_QUBITS)]
        max_qubits: usize,
        /// Only print the K most probable rows of the probability table.
        #[arg(long, value_name = "K")]
        top: Option<usize>,
        /// Include final amplitudes in json output.
        #[arg(long)]
        state: bool,
    },
    /// Parse and validate a circuit file without running it.
    Validate { file: PathBuf },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = ServiceConfig::default().max_qubits)]
        max_qubits: usize,
        #[arg(long, default_value_t = ServiceConfig::default().max_shots)]
        max_shots: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Probs,
    Bloch,
    Shots,
    Json,
}

fn load(path: &Path) -> Result<Circuit, ExitCode> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(1)
    })?;
    parse(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(1)
    })
}

fn emit(text: &str) -> ExitCode {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_run(
    file: &Path,
    seed: u64,
    shots: u64,
    format: Format,
    max_qubits: usize,
    top: Option<usize>,
    state: bool,
) -> ExitCode {
    let circuit = match load(file) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let options = RunOptions {
        max_qubits,
        ..RunOptions::default()
    };
    let result = match run_with(&circuit, seed, shots, &options) {
        Ok(r) => r,
        Err(e @ RunError::Invalid(_)) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(1);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match format {
        Format::Probs => render::probs(&result.distribution, result.final_state.num_qubits(), top),
        Format::Bloch => render::bloch(&result.bloch),
        Format::Shots => render::shots(&result.histogram()),
        Format::Json => render::json(&result, circuit.name.as_deref(), state),
    };
    emit(&text)
}

fn cmd_validate(file: &Path) -> ExitCode {
    match load(file) {
        Ok(c) => {
            eprintln!(
                "ok: {} qubits, {} cbits, {} top-level ops",
                c.num_qubits,
                c.num_cbits,
                c.ops.len()
            );
            ExitCode::SUCCESS
        }
        Err(code) => code,
    }
}

fn cmd_serve(host: &str, port: u16, config: ServiceConfig) -> ExitCode {
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    runtime.block_on(async {
        let listener = match tokio::net::TcpListener::bind((host, port)).await {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: cannot bind {host}:{port}: {e}");
                return ExitCode::from(2);
            }
        };
        match listener.local_addr() {
            Ok(addr) => {
                println!("listening on http://{addr}");
                let _ = io::stdout().flush();
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        match strideq_service::serve(listener, config).await {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        }
    })
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            file,
            seed,
            shots,
            format,
            max_qubits,
            top,
            state,
        } => cmd_run(&file, seed, shots, format, max_qubits, top, state),
        Command::Validate { file } => cmd_validate(&file),
        Command::Serve {
            host,
            port,
            max_qubits,
            max_shots,
        } => cmd_serve(&host, port, ServiceConfig { max_qubits, max_shots }),
    }
}
