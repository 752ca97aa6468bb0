use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qforest::cli::run(std::env::args_os()) as u8)
}
