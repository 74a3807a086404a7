use nsg::cli::{run, Cli, OutputFormat};

fn main() {
    let cli = Cli::parse_args(std::env::args_os()).unwrap_or_else(|e| e.exit());
    let config = cli.into_config();
    let out = run(&config);
    if out.exit_code == 0 {
        print!("{}", out.rendered(config.output));
    } else {
        if config.output == OutputFormat::Json {
            println!("{}", out.report.to_json());
        }
        eprint!("{}", out.text);
    }
    std::process::exit(out.exit_code);
}
