fn main() {
    std::process::exit(nnrec::cli::main_with_args(std::env::args_os()));
}
