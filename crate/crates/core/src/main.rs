fn main() {
    std::process::exit(twisted_deligne::cli::run(std::env::args_os()));
}
