fn main() {
    std::process::exit(alexmod::cli::run(std::env::args_os()));
}
