use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match gcdmix_cli::run(std::env::args_os()) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).is_err() {
                return ExitCode::from(5);
            }
            ExitCode::SUCCESS
        }
        Err(gcdmix_cli::CliError::Usage(e)) => {
            let code = e.exit_code();
            let _ = e.print();
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("gcdmix: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
