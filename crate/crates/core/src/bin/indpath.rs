fn main() {
    std::process::exit(indpath::cli::main_with_args(std::env::args_os()));
}
