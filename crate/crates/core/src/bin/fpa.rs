fn main() {
    std::process::exit(fpa::cli::run(std::env::args_os()));
}
