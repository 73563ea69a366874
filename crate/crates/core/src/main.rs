fn main() {
    std::process::exit(gfrob::cli::main());
}
