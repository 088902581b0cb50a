fn main() {
    std::process::exit(causal_bootstrap::cli::main());
}
