fn main() {
    std::process::exit(growthlab_cli::main_with_args(std::env::args_os()));
}
