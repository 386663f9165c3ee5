//! Betweenness of j along one branch, then over a whole tree.

use markov_j::analysis::{check_interlacing, decompose_path, InterlaceMode, TreeValues};
use markov_j::cycle_integral::CycleIntegrator;
use markov_j::tree_path::Path;

fn main() -> markov_j::Result<()> {
    let tv = TreeValues::compute(9, &CycleIntegrator::default())?;

    let leaf: Path = "LRRLRLLR".parse()?;
    println!("{:<10} {:>20} {:>20} {:>20}", "vertex", "j", "immediate", "turn");
    for lvl in 2..=9 {
        let path = leaf.ancestor_at_level(lvl);
        let d = decompose_path(&path);
        let j = |k| tv.value(k).map(|v| v.j.re);
        println!(
            "{:<10} {:>20.9} {:>20.9} {:>20.9}",
            d.key.to_string(),
            j(&d.key)?,
            j(&d.immediate)?,
            j(&d.turn_predecessor)?
        );
    }

    for mode in [InterlaceMode::Componentwise, InterlaceMode::Segment] {
        let r = check_interlacing(&tv, 9, 1e-9, mode)?;
        println!(
            "\n{mode:?}: {} vertices, {} outside, largest excursion {:.3e}",
            r.results.len(),
            r.violations().count(),
            r.max_violation()
        );
    }
    Ok(())
}
