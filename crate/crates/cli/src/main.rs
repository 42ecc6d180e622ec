fn main() -> std::process::ExitCode {
    sawtooth_cli::run(std::env::args_os())
}
