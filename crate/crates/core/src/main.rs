fn main() {
    let code = dnfrac::cli::run(std::env::args_os());
    std::process::exit(code);
}
