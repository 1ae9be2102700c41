fn main() {
    std::process::exit(atomlen::cli::run(std::env::args_os()));
}
