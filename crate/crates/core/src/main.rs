use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let seed = std::env::var(qcorr::cli::SEED_ENV).ok();
    let code = qcorr::cli::run(std::env::args_os(), seed.as_deref(), &mut io::stdout().lock(), &mut io::stderr());
    ExitCode::from(code as u8)
}
