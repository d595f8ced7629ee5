// `det e^M = e^{tr M}` from the flow of `a(z) = Mz`: exactly for nilpotent
// `M`, in floating point otherwise.
//
// cargo run --example liouville

use jetflow::prelude::*;
use jetflow::random::Sampler;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let m = ConstantMatrix::new(vec![vec![int(0), int(1)], vec![int(0), int(0)]])?;
    let r = liouville_check(&m, LiouvilleMode::ExactNilpotent)?;
    println!("{}", r.to_json());
    assert!(r.passed());

    let mut s = Sampler::new(9);
    let n = s.nilpotent_matrix(3);
    println!("M = {n}");
    let r = liouville_check(&n, LiouvilleMode::ExactNilpotent)?;
    println!("e^M = {:?}", r.exp_m);
    assert!(r.passed());

    let x = ConstantMatrix::new(vec![vec![int(1), rat(1, 2)], vec![rat(-1, 3), int(2)]])?;
    let r = liouville_check(&x, LiouvilleMode::Numeric)?;
    println!("det e^M = {}, e^tr M = {}", r.det_exp, r.exp_trace);
    assert!(r.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
