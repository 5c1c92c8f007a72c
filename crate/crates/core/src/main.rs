fn main() {
    std::process::exit(laurent_spectra::cli::run(std::env::args_os()));
}
