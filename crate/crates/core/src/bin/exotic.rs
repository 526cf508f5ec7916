fn main() {
    std::process::exit(exotic::cli::main());
}
