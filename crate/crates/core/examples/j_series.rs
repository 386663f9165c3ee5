//! The q-expansion of j: coefficients, special values and the arc average.

use std::f64::consts::PI;

use num_complex::Complex64;

use markov_j::cycle_integral::CycleIntegrator;
use markov_j::modular_j::{truncation_error_bound, JSeries};

fn main() -> markov_j::Result<()> {
    let s = JSeries::new(40);
    for m in -1..=5 {
        println!("c({m:>2}) = {}", s.coefficient(m));
    }
    println!("c(40) = {}", s.coefficient(40));

    println!("\nj(i)   = {:.10}", s.eval(Complex64::i())?);
    println!("j(rho) = {:.3e}", s.eval(Complex64::from_polar(1.0, PI / 3.0))?.norm());
    println!("tail bound on the arc: {:.2e}", truncation_error_bound(40, 3f64.sqrt() / 2.0));

    println!("\n  theta/pi   j(e^(i theta))");
    for k in 0..=6 {
        let t = PI / 3.0 + PI / 3.0 * k as f64 / 6.0;
        println!("  {:.4}     {:.9}", t / PI, s.on_arc(t).re);
    }

    let avg = CycleIntegrator::new(s).average_integral()?;
    println!("\nintegral of j over the arc: {avg:.9}");
    Ok(())
}
