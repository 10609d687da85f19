fn main() {
    std::process::exit(ivw_agreement::cli::main());
}
