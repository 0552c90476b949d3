fn main() {
    std::process::exit(linv::cli::main());
}
