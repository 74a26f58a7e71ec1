fn main() {
    std::process::exit(quantum_pagerank::cli::run(std::env::args_os()));
}
