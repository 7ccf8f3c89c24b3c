use clap::Parser;

fn main() {
    let cli = trifactor::cli::Cli::parse();
    std::process::exit(trifactor::cli::run(cli));
}
