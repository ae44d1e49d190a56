use std::io::Write;

fn main() {
    let (code, out) = covers_cli::run(std::env::args_os());
    // A closed pipe downstream is not an error worth reporting.
    let _ = if code == 2 {
        writeln!(std::io::stderr(), "{}", out.trim_end())
    } else {
        writeln!(std::io::stdout(), "{}", out.trim_end())
    };
    std::process::exit(code);
}
