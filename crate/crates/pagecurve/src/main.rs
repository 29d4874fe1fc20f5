fn main() {
    std::process::exit(pagecurve::cli::run_cli(std::env::args_os()));
}
