fn main() {
    premetric::cli::run();
}
