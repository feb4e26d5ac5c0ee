fn main() {
    std::process::exit(fastforward_cli::run(std::env::args_os()));
}
