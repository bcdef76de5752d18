use clap::Parser;
use omega_tool::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("omega: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
