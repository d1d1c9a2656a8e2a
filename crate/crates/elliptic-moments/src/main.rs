fn main() {
    std::process::exit(elliptic_moments::cli::run());
}
