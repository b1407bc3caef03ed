use std::process::ExitCode;

fn main() -> ExitCode {
    allagmatic::cli::main()
}
