fn main() {
    std::process::exit(toralsym::cli::run(std::env::args_os()));
}
