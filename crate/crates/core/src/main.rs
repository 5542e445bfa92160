fn main() {
    std::process::exit(swipt_secrecy::cli::run(std::env::args_os()));
}
