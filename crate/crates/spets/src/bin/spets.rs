fn main() {
    std::process::exit(spets::cli::run(std::env::args_os()));
}
