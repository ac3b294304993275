fn main() {
    std::process::exit(toric_classes::cli::run(std::env::args_os()));
}
