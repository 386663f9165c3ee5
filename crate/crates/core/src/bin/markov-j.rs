fn main() -> std::process::ExitCode {
    markov_j::cli::main()
}
