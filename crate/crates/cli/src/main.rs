fn main() {
    std::process::exit(cosheaf_cli::main_with_args(std::env::args()));
}
