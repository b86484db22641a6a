fn main() {
    std::process::exit(drcec::cli::main());
}
