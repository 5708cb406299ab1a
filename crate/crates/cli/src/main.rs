fn main() {
    std::process::exit(dprox_cli::run(std::env::args_os()));
}
