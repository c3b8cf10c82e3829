fn main() {
    std::process::exit(weyl_mirror::cli::run(std::env::args_os()));
}
