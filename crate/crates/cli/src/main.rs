fn main() {
    std::process::exit(ultrauniform::run(std::env::args_os()));
}
