use std::io::Write;

use clap::Parser;

fn main() {
    let cli = qreg_cli::Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = qreg_cli::run(&cli, &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
