fn main() {
    std::process::exit(qknot::cli::run());
}
