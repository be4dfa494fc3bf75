use clap::Parser;
use qmb_cli::args::Cli;
use qmb_cli::run::run;

fn main() {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qmb: {e}");
            e.status()
        }
    };
    std::process::exit(code);
}
