use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = bairecf_cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    // A closed pipe is not worth reporting.
    let _ = stdout.write_all(result.stdout().as_bytes());
    let _ = stdout.flush();
    if let Some(message) = &result.message {
        eprintln!("error: {message}");
    }
    ExitCode::from(result.exit_code() as u8)
}
