fn main() -> std::process::ExitCode {
    semichain::cli::main()
}
