fn main() {
    std::process::exit(adams_fixpoints::cli::run(std::env::args_os()));
}
