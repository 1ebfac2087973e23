use clap::Parser;

fn main() {
    let cli = coxring_cli::Cli::parse();
    std::process::exit(coxring_cli::main_with(&cli));
}
