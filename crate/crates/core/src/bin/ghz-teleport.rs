fn main() -> std::process::ExitCode {
    ghz_teleport::cli::main()
}
