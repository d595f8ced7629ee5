// `F = z + H` with `H` homogeneous and `(JH)^2 = 0` has inverse `z - H`
// and generator `H`.
//
// cargo run --example bcw

use jetflow::prelude::*;
use jetflow::random::Sampler;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Sampler::new(2);
    let h = s.bcw_first_row(3, 3, 8);
    println!("H:\n{}", h.to_text());
    let r = bcw_case(&h)?;
    assert!(r.nilpotent && r.passed());
    println!("G:\n{}", r.g.as_ref().unwrap().to_text());
    for c in &r.checks.checks {
        println!("  {} {}", if c.passed { "ok" } else { "FAIL" }, c.name);
    }

    // (z2^2, z1^2) is not nilpotent, so nothing is claimed
    let h = MapTuple::new(vec![Series::monomial(2, 4, vec![0, 2], int(1))?, Series::monomial(2, 4, vec![2, 0], int(1))?])?;
    assert!(!bcw_case(&h)?.nilpotent);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
