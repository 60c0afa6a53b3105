//! Builds a run configuration in code, runs it and writes the JSON report
//! atomically, as the `trigres` binary does.
use trigres::runner::{run, write_atomic, Command, Range, ReportFile, RunConfig};

fn main() -> trigres::Result<()> {
    let mut cfg = RunConfig::new(Command::Invariants);
    cfg.primes = Some(Range::new(70, 90)?);
    let outcome = run(&cfg, "1970-01-01T00:00:00Z")?;

    let path = std::env::temp_dir().join("trigres-invariants.json");
    let json = outcome.report.to_json()?;
    write_atomic(&path, &json)?;
    println!("wrote {} (exit code {})", path.display(), outcome.exit_code);

    let back = ReportFile::from_json(&std::fs::read_to_string(&path)?)?;
    for r in &back.records {
        println!("p={} {:?}", r.params["p"], r.values);
    }
    print!("{}", back.to_csv()?);
    Ok(())
}
