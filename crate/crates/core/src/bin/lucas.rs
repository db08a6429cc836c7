fn main() -> std::process::ExitCode {
    lucas_diophantine::cli::main()
}
