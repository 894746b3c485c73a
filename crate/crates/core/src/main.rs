fn main() -> std::process::ExitCode {
    gama::cli::main_entry()
}
