fn main() {
    std::process::exit(lclc::cli::main_entry());
}
