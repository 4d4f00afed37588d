fn main() {
    std::process::exit(torific::cli::run());
}
