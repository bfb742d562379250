fn main() {
    std::process::exit(gammaspec::cli::main());
}
