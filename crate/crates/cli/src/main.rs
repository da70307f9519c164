fn main() {
    std::process::exit(prescen_cli::run(std::env::args_os()));
}
