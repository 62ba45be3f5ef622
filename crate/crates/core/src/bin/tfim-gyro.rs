fn main() -> std::process::ExitCode {
    tfim_gyro::cli::run()
}
