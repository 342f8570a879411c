use std::io;
use std::process;

fn main() {
    let code = toeplitz_mrhs::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    process::exit(code);
}
