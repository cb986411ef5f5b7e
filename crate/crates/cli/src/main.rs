fn main() {
    std::process::exit(shishkin_rk_cli::main_with_args(std::env::args_os()));
}
