fn main() {
    std::process::exit(power_ops::run());
}
