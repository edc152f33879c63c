fn main() {
    std::process::exit(hyperphi::cli::main_with_args(std::env::args_os()));
}
