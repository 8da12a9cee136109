fn main() {
    std::process::exit(plycover_cli::run(std::env::args_os()));
}
