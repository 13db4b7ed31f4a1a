fn main() {
    std::process::exit(genus2_hurwitz::cli::main_with_args(std::env::args_os()));
}
