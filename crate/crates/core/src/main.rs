use std::io::Write;

fn main() {
    let out = nearauto::cli::run_args(std::env::args_os());
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", out.stderr);
    std::process::exit(out.code as i32);
}
