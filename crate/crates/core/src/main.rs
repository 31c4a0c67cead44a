fn main() {
    std::process::exit(superwl::cli::run(std::env::args_os()));
}
