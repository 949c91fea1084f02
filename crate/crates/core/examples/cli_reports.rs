// Drives the command-line layer in process: the same report in three
// formats, and a determinant table persisted to a cache directory.

use motzkin_hankel::cli::{execute, Cache, Cli, Method};

use clap::Parser;

fn run(args: &[&str]) -> Result<String, Box<dyn std::error::Error>> {
    let cli = Cli::try_parse_from(std::iter::once("motzkin-hankel").chain(args.iter().copied()))?;
    Ok(execute(&cli)?.text)
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for format in ["json", "csv", "md"] {
        println!("{}", run(&["fit", "--r", "3", "--n-max", "20", "--format", format])?);
    }

    let dir = std::env::temp_dir().join(format!("motzkin-hankel-example-{}", std::process::id()));
    let cache = dir.to_str().ok_or("non-utf8 temp dir")?;
    run(&["det", "--r", "6", "--n-max", "30", "--cache", cache])?;
    let stored = Cache::new(&dir).load(6, Method::Tau, "exact", 30)?.ok_or("table not cached")?;
    println!("cached H_30(M^6) = {}", stored[30]);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
