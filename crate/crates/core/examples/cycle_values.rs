//! J(w)/q and j(w) for the vertices named on the command line.
//!
//! ```text
//! cargo run --example cycle_values -- 0/1 1/2 1/3 12/25 LRRL
//! ```

use markov_j::cli::resolve_node;
use markov_j::cycle_integral::{CycleIntegrator, Orientation};

fn main() -> markov_j::Result<()> {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        args = ["0/1", "1/3", "2/5", "1/14", "12/25", "1/2"].map(String::from).to_vec();
    }
    let integ = CycleIntegrator::default();
    println!("{:>7}  {:>32}  {:>32}  {:>10}", "p/q", "J/q", "j", "error");
    for a in &args {
        let node = resolve_node(a, 64)?;
        let v = integ.integrate(&node)?;
        let jq = v.j_over_q();
        println!(
            "{:>7}  {:>15.9} {:>+16.12}i  {:>15.9} {:>+16.12}i  {:>10.2e}",
            format!("{}/{}", v.p, v.q),
            jq.re,
            jq.im,
            v.j.re,
            v.j.im,
            v.quad_err
        );
    }

    // reading the period the other way round conjugates every value
    let node = resolve_node("2/5", 64)?;
    let lit = integ.clone().with_orientation(Orientation::Literal).integrate(&node)?;
    println!("\n2/5 with the literal orientation: j = {:.9}", lit.j);
    Ok(())
}
