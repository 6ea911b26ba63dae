fn main() {
    std::process::exit(torfan_cli::run_command(
        &std::env::args().skip(1).collect::<Vec<_>>(),
    ));
}
