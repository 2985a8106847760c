use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let out = schurcover_cli::run(&argv);
    if !out.stdout.is_empty() {
        let mut stdout = std::io::stdout().lock();
        let _ = writeln!(stdout, "{}", out.stdout);
    }
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr);
    }
    std::process::exit(out.code);
}
