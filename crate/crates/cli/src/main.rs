use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = rga_cli::run(std::env::args_os().skip(1));
    if outcome.code == 2 {
        eprint!("{}", outcome.stdout);
    } else {
        print!("{}", outcome.stdout);
    }
    ExitCode::from(outcome.code as u8)
}
