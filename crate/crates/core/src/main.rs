fn main() {
    std::process::exit(sinetune::cli::main_with_args(std::env::args_os()));
}
