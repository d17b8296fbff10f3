fn main() {
    std::process::exit(midset_cli::run_from_args());
}
