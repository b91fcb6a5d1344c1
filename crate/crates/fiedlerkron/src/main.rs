//! `fiedlerkron` command-line tool.

fn main() {
    std::process::exit(fiedlerkron::cli::main_with_args(std::env::args_os()));
}
