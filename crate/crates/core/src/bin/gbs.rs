fn main() {
    std::process::exit(gbs_deform::cli::run());
}
