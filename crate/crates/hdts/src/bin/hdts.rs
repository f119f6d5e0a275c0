fn main() {
    std::process::exit(hdts::cli::run());
}
