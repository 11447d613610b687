fn main() {
    std::process::exit(unmating::cli::run(std::env::args_os()));
}
