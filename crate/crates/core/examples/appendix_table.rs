//! Writes the depth-12 table to CSV through a cache, then checks it on a second run.
//!
//! ```text
//! cargo run --release --example appendix_table -- /tmp/table.csv
//! ```

use markov_j::cli::{cmd_table, cmd_verify, read_value_csv, RunConfig, Session, VerifyOptions};

fn main() -> markov_j::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "table.csv".into());
    let dir = tempfile::tempdir()?;
    let config = RunConfig {
        depth: 12,
        cache: Some(dir.path().join("values.jsonl")),
        ..RunConfig::default()
    };

    let mut first = Vec::new();
    cmd_table(&mut Session::new(config.clone())?, &mut first)?;
    let mut second = Vec::new();
    cmd_table(&mut Session::new(config.clone())?, &mut second)?;
    assert_eq!(first, second, "warm cache changed the output");
    std::fs::write(&out, &first)?;

    let rows = read_value_csv(first.as_slice())?;
    println!("{} rows written to {out}", rows.len());
    for r in rows.iter().take(3).chain(rows.iter().rev().take(2).rev()) {
        println!("  {:>6}  {:.9}  {:+.12}i", format!("{}/{}", r.p, r.q), r.j_re, r.j_im);
    }

    let mut report = Vec::new();
    let ok = cmd_verify(&mut Session::new(RunConfig { depth: 9, ..config })?, VerifyOptions::default(), &mut report)?;
    println!("\n{}", String::from_utf8_lossy(&report));
    println!("all hard checks passed: {ok}");
    Ok(())
}
