//! Bounds on J/√n and j for large n, from the published envelope and from a fresh one.

use markov_j::analysis::{computed_envelope, theorem2_constants, Envelope, TreeValues};
use markov_j::cycle_integral::CycleIntegrator;

fn main() -> markov_j::Result<()> {
    let tv = TreeValues::compute(12, &CycleIntegrator::default())?;
    let fresh = computed_envelope(tv.values(), 12).expect("non-empty");
    println!("computed envelope: {fresh:?}");

    for (label, env) in [("published", Envelope::PUBLISHED), ("computed", fresh)] {
        println!("\n{label}:");
        for k0 in [12, 16] {
            let c = theorem2_constants(k0, env)?;
            println!(
                "  k0 = {k0:>2}: Re j in [{:.5}, {:.5}], Im j in [{:.5}, {:.5}]",
                c.j_re.0, c.j_re.1, c.j_im.0, c.j_im.1
            );
        }
    }
    Ok(())
}
