fn main() {
    std::process::exit(gamma_roots::cli::main());
}
