fn main() {
    std::process::exit(johnsonlab::cli::run_from(std::env::args_os()));
}
