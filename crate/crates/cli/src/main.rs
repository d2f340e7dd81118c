fn main() {
    let code = lipfree_cli::run(std::env::args_os());
    std::process::exit(code);
}
