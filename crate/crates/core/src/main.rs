fn main() {
    std::process::exit(recip_pascal::cli::main());
}
