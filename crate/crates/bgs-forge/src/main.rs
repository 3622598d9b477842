fn main() {
    std::process::exit(bgs_forge::cli::run(std::env::args_os()));
}
