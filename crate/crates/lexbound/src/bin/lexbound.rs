fn main() {
    std::process::exit(lexbound::cli::run(std::env::args().skip(1)));
}
