fn main() {
    bicomplex::cli::main_entry()
}
