fn main() {
    std::process::exit(legsurg::cli::run(std::env::args_os()));
}
