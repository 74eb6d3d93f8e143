fn main() {
    std::process::exit(mrd3::cli::main_with_args(std::env::args_os()));
}
