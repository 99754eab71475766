use censwave_cli::{run, Cli, Command, Mode, RunConfig};
use clap::Parser;

fn main() {
    let cli = Cli::parse();
    let (overrides, mode) = match &cli.command {
        Command::Run(o) => (o, None),
        Command::Estimate(o) => (o, Some(Mode::Estimate)),
        Command::Simulate(o) => (o, Some(Mode::Simulate)),
    };
    let result = RunConfig::resolve(overrides, mode).and_then(|cfg| run(&cfg));
    match result {
        Ok(summary) => println!("{summary}"),
        Err(e) => {
            eprintln!("{}", e.to_json());
            std::process::exit(e.exit_code());
        }
    }
}
