fn main() {
    std::process::exit(hyperspec::cli::run());
}
