//! Periods of minus continued fractions, their values and reduction cycles.

use markov_j::continued_fractions::{conjunction, cycle_states, eval_periodic, period_matrix, Period, DEFAULT_TOL};
use markov_j::markov_tree::node_at;

fn main() -> markov_j::Result<()> {
    let left: Period = "3".parse()?;
    let right: Period = "2,4".parse()?;
    let root = conjunction(&right, &left);
    println!("(2,4) ⊙ (3) = ({root})");

    let w = eval_periodic(root.digits(), DEFAULT_TOL)?;
    println!("value of the purely periodic expansion: {w:.12}");
    println!("period matrix trace: {}", period_matrix(&root).trace());

    println!("\nreduction cycle of ({root}):");
    for s in cycle_states(&root, DEFAULT_TOL)? {
        println!("  a0 = {}  w = {:.12}  conjugate = {:.12}", s.a0, s.value, s.conj_value);
    }

    let n = node_at(&"LRRL".parse()?)?;
    println!(
        "\nLRRL: p/q = {}/{}, period ({}) has {} digits summing to {}, canonical rotation ({})",
        n.farey.p,
        n.farey.q,
        n.period.to_run_length(),
        n.period.len(),
        n.period.digit_sum(),
        n.period.canonical()
    );
    Ok(())
}
