fn main() {
    std::process::exit(partition_dd::cli::run_cli(std::env::args().skip(1)));
}
