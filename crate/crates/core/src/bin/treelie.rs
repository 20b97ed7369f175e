fn main() {
    std::process::exit(treelie::cli::run(std::env::args_os()));
}
