fn main() {
    std::process::exit(binet::cli::run(std::env::args_os()));
}
