use std::io::Write;
use std::process::ExitCode;

use spinpic_cli::RunError;

fn main() -> ExitCode {
    match spinpic_cli::run(std::env::args_os()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e @ RunError::Args(_)) => {
            if let RunError::Args(inner) = &e {
                let _ = inner.print();
            }
            ExitCode::from(e.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("spinpic: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
