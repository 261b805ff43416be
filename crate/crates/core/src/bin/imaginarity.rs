fn main() {
    std::process::exit(imaginarity::cli::main_with_args(std::env::args_os()));
}
