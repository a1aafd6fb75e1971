fn main() {
    std::process::exit(trunk_match::cli::main_with_std());
}
