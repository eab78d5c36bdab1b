fn main() {
    std::process::exit(fingauss::cli::run(std::env::args_os()));
}
