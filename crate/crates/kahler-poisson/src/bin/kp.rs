use kahler_poisson::cli;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let result = cli::run_command(&args);
    println!("{}", result.rendered());
    std::process::exit(result.exit_code);
}
