fn main() {
    std::process::exit(pedsafe::cli::main_with_args(std::env::args_os()));
}
