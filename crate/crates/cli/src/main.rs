fn main() {
    std::process::exit(qfdiv_cli::run(std::env::args_os()));
}
