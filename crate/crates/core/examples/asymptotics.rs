//! How q_n/√n and log(c_n)·√C/√n approach their limits.

use markov_j::analysis::{asymptotics_report, ASYMPTOTIC_LOG10_C_LIMIT, ASYMPTOTIC_Q_LIMIT};

fn main() {
    let r = asymptotics_report(ASYMPTOTIC_Q_LIMIT, ASYMPTOTIC_LOG10_C_LIMIT);
    println!("{} fractions, {} Markov numbers", r.fraction_count, r.markov_count);
    for s in [&r.q_series, &r.c_series, &r.eps_series] {
        println!("\n{} -> {:.9}", s.name, s.target);
        for w in &s.windows {
            println!("  [{:>6}, {:>6})  {:.9}  {:.3e}", w.start, w.end, w.mean, w.distance);
        }
    }
}
