fn main() {
    std::process::exit(fibsearch::cli::run(std::env::args_os()));
}
