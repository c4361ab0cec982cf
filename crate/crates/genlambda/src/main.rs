use clap::Parser;

fn main() {
    let cli = genlambda::cli::Cli::parse();
    std::process::exit(genlambda::cli::run(cli));
}
