use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = baric_cli::run(std::env::args_os());
    let text = outcome.output;
    if outcome.code == 2 {
        eprint!("{text}");
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    ExitCode::from(outcome.code as u8)
}
