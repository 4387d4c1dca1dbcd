fn main() {
    std::process::exit(levy_em::cli::main_with_args(std::env::args_os()));
}
