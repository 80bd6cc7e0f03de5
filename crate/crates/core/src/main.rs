use clap::Parser;

fn main() {
    let cli = scopegate::cli::Cli::parse();
    if let Err(e) = scopegate::cli::run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.code);
    }
}
