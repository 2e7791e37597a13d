//! Thin binary over [`durhybrid::cli`].

fn main() {
    std::process::exit(durhybrid::cli::run(std::env::args_os()));
}
