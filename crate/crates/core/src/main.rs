fn main() {
    std::process::exit(supergeom::cli::main_with_args(std::env::args_os()));
}
