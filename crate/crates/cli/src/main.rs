fn main() {
    std::process::exit(pflicm_cli::main_with_args(std::env::args_os()));
}
