use clap::Parser;

fn main() {
    let cli = heavytail::cli::Cli::parse();
    std::process::exit(heavytail::cli::run(cli));
}
