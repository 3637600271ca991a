fn main() -> std::process::ExitCode {
    klr_cli::run()
}
