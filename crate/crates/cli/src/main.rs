fn main() {
    std::process::exit(regnilp_cli::main_with_args(std::env::args_os()));
}
