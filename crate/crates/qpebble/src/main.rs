fn main() {
    std::process::exit(qpebble::cli::run(std::env::args_os()));
}
