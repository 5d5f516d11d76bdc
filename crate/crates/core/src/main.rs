fn main() {
    std::process::exit(harmonic_core::cli::main_with(std::env::args_os()));
}
