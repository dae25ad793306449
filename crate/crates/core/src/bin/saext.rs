fn main() {
    std::process::exit(saext::cli::run(std::env::args_os()));
}
