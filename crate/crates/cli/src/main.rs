fn main() {
    std::process::exit(anisoribbon_cli::run(std::env::args_os()));
}
