use corpus_contrast::cli;

fn main() {
    std::process::exit(cli::run());
}
