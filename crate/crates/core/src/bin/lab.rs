use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let code = lplab::cli::main_with_args(&args, &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
