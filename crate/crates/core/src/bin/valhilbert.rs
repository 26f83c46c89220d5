fn main() {
    let mut stdout = std::io::stdout().lock();
    let code = valhilbert::cli::run_args(std::env::args_os(), &mut stdout);
    std::process::exit(code);
}
