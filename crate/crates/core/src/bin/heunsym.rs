fn main() {
    std::process::exit(heunsym::cli::run(std::env::args_os()));
}
