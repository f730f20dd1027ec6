use std::process::ExitCode;

use milnor_cli::{parse_args, run};

fn main() -> ExitCode {
    let config = match parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let outcome = run(&config);
    if outcome.status == 2 {
        eprint!("{}", outcome.output);
        return ExitCode::from(2);
    }
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.output) {
                eprintln!("error: {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.output),
    }
    ExitCode::from(outcome.status as u8)
}
