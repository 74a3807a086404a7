//! Running CLI commands in-process and reading the JSON report.

use nsg::cli::{run, Command, Report, RunConfig};

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("spaces");
    let mut config = RunConfig::new(dir.join("linf2.json"), Command::Orth, &["1,0", "0,1"]);
    let out = run(&config);
    print!("{}", out.text);

    config = RunConfig::new(dir.join("stadium.json"), Command::Roundtrip, &["1,1"]);
    let out = run(&config);
    let json = out.report.to_json();
    let back = Report::from_json(&json).expect("report parses");
    assert_eq!(back, out.report);
    println!("{json}");
    println!("exit code {}", out.exit_code);
}
