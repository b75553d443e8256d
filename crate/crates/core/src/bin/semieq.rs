fn main() {
    std::process::exit(semieq::cli::run(std::env::args_os()));
}
