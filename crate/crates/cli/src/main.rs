fn main() {
    std::process::exit(geographer::main_with(std::env::args_os()));
}
