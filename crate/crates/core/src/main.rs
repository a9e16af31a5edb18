fn main() {
    std::process::exit(fibpad::cli::run(std::env::args_os()));
}
