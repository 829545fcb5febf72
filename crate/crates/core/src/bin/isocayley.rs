fn main() {
    std::process::exit(isocayley::cli::run(std::env::args_os()));
}
