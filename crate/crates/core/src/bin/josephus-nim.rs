use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdin = io::stdin();
    let code = josephus_nim_core::cli::run(
        std::env::args_os(),
        stdin.lock(),
        io::stdout(),
        io::stderr(),
    );
    ExitCode::from(code as u8)
}
