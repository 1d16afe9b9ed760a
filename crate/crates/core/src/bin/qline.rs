fn main() {
    std::process::exit(qline::cli::main_with_args(std::env::args_os()));
}
