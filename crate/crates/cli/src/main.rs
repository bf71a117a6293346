fn main() {
    std::process::exit(fdde_cli::run(std::env::args_os()));
}
