fn main() {
    std::process::exit(eulerian_slices::cli::main_with_args(std::env::args_os()));
}
