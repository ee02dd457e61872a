fn main() {
    std::process::exit(inferlab_cli::run(std::env::args()));
}
