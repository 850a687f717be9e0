fn main() {
    std::process::exit(sojourn::cli::main_entry());
}
