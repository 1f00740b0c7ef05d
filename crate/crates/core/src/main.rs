fn main() {
    std::process::exit(contingent::cli::main_with(std::env::args_os()));
}
