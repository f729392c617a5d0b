fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    std::process::exit(srcurv_cli::run_cli(&argv));
}
