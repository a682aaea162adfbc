use std::io::{self, Write};

fn main() {
    let stdin = io::stdin();
    let mut stdin = stdin.lock();
    let mut stdout = io::stdout().lock();
    let mut stderr = io::stderr().lock();
    let code = hilbert_lambda::cli::run(std::env::args_os(), &mut stdin, &mut stdout, &mut stderr);
    let _ = stdout.flush();
    std::process::exit(code);
}
