use clap::Parser;

fn main() {
    let cli = ffhyper::cli::Cli::parse();
    match ffhyper::cli::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
