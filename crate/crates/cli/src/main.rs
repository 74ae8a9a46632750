use std::io;

fn main() {
    let code = jacobi_logan_cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
