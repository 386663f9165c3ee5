//! The local recursion J(w) = J(u) + J(v) + δ and how fast δ shrinks.

use markov_j::analysis::{check_j_recursion, check_q_recursion, decompose_path, delta_bound, lambdas, TreeValues, DELTA_RE};
use markov_j::cycle_integral::CycleIntegrator;

fn main() -> markov_j::Result<()> {
    let d = decompose_path(&"LRRLL".parse()?);
    println!(
        "LRRLL: turns at levels {:?}, immediate {}, turn predecessor {}, lambdas {:?}",
        d.turn_levels,
        d.immediate,
        d.turn_predecessor,
        lambdas(&d)
    );

    let tv = TreeValues::compute(10, &CycleIntegrator::default())?;
    let q = check_q_recursion(&tv.tree)?;
    println!("\nq recursion: {} vertices, {} mismatches", q.nodes_checked, q.mismatches.len());

    println!("\nlevel  max |Re δ|        bound");
    for n in 2..=10 {
        let worst = tv
            .values()
            .iter()
            .filter(|v| v.level() == n)
            .map(|v| {
                let d = decompose_path(v.key.path().expect("internal"));
                let sum = tv.value(&d.immediate).unwrap().big_j + tv.value(&d.turn_predecessor).unwrap().big_j;
                (v.big_j - sum).re.abs()
            })
            .fold(0.0, f64::max);
        println!("{n:>5}  {worst:<16.6e}  {:.6e}", delta_bound(DELTA_RE, n));
    }

    let r = check_j_recursion(&tv, 10, 1e-6)?;
    println!(
        "\nworst ratio to the bound: {:.3e} (real), {:.3e} (imaginary)",
        r.max_ratio_re, r.max_ratio_im
    );
    Ok(())
}
