use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::Parser;

use centralizer_cli::{run, Cli, Options};

fn read_input(path: &str) -> io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match read_input(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.input);
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        oracle_cap: cli.oracle_cap,
        no_oracle: cli.no_oracle,
        seed: cli.seed,
    };
    let outcome = match run(cli.command, &text, &opts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let mut body = serde_json::to_string_pretty(&outcome.report).expect("serializable");
    body.push('\n');
    let written = if cli.output == "-" {
        io::stdout().write_all(body.as_bytes())
    } else {
        fs::write(&cli.output, body)
    };
    if let Err(e) = written {
        eprintln!("error: cannot write {}: {e}", cli.output);
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit_code() as u8)
}
