fn main() {
    std::process::exit(spadmm::cli::run());
}
