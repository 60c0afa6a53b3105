fn main() {
    std::process::exit(trigres::runner::main_with_args(std::env::args_os()));
}
