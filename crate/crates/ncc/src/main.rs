fn main() {
    std::process::exit(ncc::cli::main());
}
