use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use mcdef_cli::{run, Command, Flags, Format};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

#[derive(Parser, Debug)]
#[command(name = "mcdef", about = "Exact checks for weighted DG Lie algebras, L-infinity transfer and monodromy filtrations")]
struct Args {
    /// check, cohomology, transfer, cone, present, monodromy, relmonodromy, zfilt, tensor or consequences
    command: String,
    /// Fixture files; may also be given positionally.
    #[arg(long = "fixture", value_name = "PATH")]
    fixture: Vec<PathBuf>,
    #[arg(value_name = "FIXTURE")]
    positional: Vec<PathBuf>,
    /// Highest arity of transferred operations.
    #[arg(long, default_value_t = 6)]
    cap: usize,
    /// Solutions are taken over Q[t]/(t^N).
    #[arg(long, default_value_t = 4)]
    truncation: u32,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    center: i64,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command: Command = match args.command.parse() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("mcdef: {e}");
            return ExitCode::from(2);
        }
    };
    let mut inputs = Vec::new();
    for path in args.fixture.iter().chain(&args.positional) {
        match std::fs::read_to_string(path) {
            Ok(text) => {
                let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                inputs.push((name, text));
            }
            Err(e) => {
                eprintln!("mcdef: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    let flags = Flags { cap: args.cap, truncation: args.truncation, center: args.center };
    let format = match args.format {
        FormatArg::Human => Format::Human,
        FormatArg::Machine => Format::Machine,
    };
    match run(command, &flags, &inputs) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("mcdef: {e}");
            ExitCode::from(2)
        }
    }
}
