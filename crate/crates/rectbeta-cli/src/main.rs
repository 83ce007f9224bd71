use clap::Parser;
use rectbeta_cli::{run, Cli};

fn main() {
    match run(Cli::parse()) {
        Ok(v) => println!("{v}"),
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}
