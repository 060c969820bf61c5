fn main() {
    std::process::exit(salem::cli::run());
}
