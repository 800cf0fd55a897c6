fn main() {
    std::process::exit(canonmap::run(std::env::args_os()));
}
