//! Walks the first levels of the tree and looks up a few fractions.
//!
//! ```text
//! cargo run --example markov_tree -- 5
//! ```

use markov_j::markov_tree::{locate_fraction, markov_numbers_up_to, MarkovTree};
use num_bigint::BigUint;

fn main() -> markov_j::Result<()> {
    let depth = std::env::args().nth(1).map_or(Ok(4), |s| s.parse()).expect("depth");
    let tree = MarkovTree::build(depth)?;

    println!("{:<8} {:>5} {:>7} {:>24}  period", "path", "level", "p/q", "triple");
    for n in tree.sorted_by_fraction() {
        let t = &n.triple;
        println!(
            "{:<8} {:>5} {:>7} {:>24}  ({})",
            n.key.to_string(),
            n.level,
            format!("{}/{}", n.farey.p, n.farey.q),
            format!("({}, {}, {})", t.a, t.b, t.c),
            n.period.to_run_length()
        );
    }

    let n = locate_fraction(12, 25, 64)?;
    println!("\n12/25 sits at {} (level {}), c = {}", n.key, n.level, n.c());
    println!("its Markov form is {:?}, k = {}", n.markov_form, n.k);

    if let Err(e) = locate_fraction(3, 5, 64) {
        println!("3/5: {e}");
    }

    let mut cs = markov_numbers_up_to(&BigUint::from(100_000u32));
    cs.sort();
    let list: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
    println!("\nMarkov numbers up to 10^5 ({}): {}", cs.len(), list.join(", "));
    Ok(())
}
