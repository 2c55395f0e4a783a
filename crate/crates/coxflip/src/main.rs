use std::process::ExitCode;

fn main() -> ExitCode {
    coxflip::cli::run(std::env::args_os())
}
