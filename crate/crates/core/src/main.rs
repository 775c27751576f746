fn main() {
    std::process::exit(semistab::cli::run(std::env::args_os()));
}
