fn main() {
    std::process::exit(dirac_msy_cli::main_entry(std::env::args_os()));
}
