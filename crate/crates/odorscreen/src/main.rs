fn main() -> std::process::ExitCode {
    odorscreen::cli::main()
}
