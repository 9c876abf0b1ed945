use clap::Parser;
use morita_lab::Cli;

fn main() {
    std::process::exit(Cli::parse().run());
}
