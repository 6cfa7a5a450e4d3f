fn main() {
    std::process::exit(localcert::cli::run(std::env::args_os()));
}
