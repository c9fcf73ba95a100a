fn main() {
    std::process::exit(k3aut::cli::run());
}
