fn main() {
    std::process::exit(sfcurve::cli::run(std::env::args_os()));
}
