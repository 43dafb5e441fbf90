use clap::Parser;

fn main() -> std::process::ExitCode {
    let cli = tspevo_bench::cli::Cli::parse();
    match tspevo_bench::cli::execute(cli) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::ExitCode::FAILURE
        }
    }
}
