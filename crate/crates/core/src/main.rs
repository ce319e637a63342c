use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, report) = bhlogic::cli::run(std::env::args_os());
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(report.as_bytes());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
