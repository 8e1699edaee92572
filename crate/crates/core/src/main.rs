fn main() {
    std::process::exit(cliffordian::cli::dispatch(std::env::args_os()));
}
