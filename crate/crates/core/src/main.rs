use clap::Parser;
use specschrod::cli;

fn main() {
    let args = cli::Cli::parse();
    match cli::execute(args) {
        Ok(summary) => print!("{summary}"),
        Err(err) => {
            eprintln!("error[{}]: {err}", err.category());
            std::process::exit(err.exit_code());
        }
    }
}
