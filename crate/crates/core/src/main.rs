fn main() {
    std::process::exit(pdt::cli::main_with_args(std::env::args_os()));
}
