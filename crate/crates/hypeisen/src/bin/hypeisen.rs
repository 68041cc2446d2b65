fn main() {
    std::process::exit(hypeisen::cli::run_cli());
}
