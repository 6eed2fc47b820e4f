fn main() -> std::process::ExitCode {
    eqtrace::cli::main()
}
