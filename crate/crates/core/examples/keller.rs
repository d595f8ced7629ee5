// `det JF = 1` exactly when the generator is divergence free.
//
// cargo run --example keller

use jetflow::prelude::*;
use jetflow::random::Sampler;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Sampler::new(11);
    let d = 7;
    // Hamiltonian fields are divergence free
    let a = s.divergence_free_derivation(3, 3, d);
    let f = exp_flow(&a, &int(1))?;
    let k = keller_check(&f)?;
    println!("divergence-free generator: {k:?}");
    assert!(k.jac_is_one && k.div_is_zero);

    let b = s.generic_derivation(3, 3, d);
    let k = keller_check(&exp_flow(&b, &int(1))?)?;
    println!("generic generator:         {k:?}");
    assert!(!k.jac_is_one && !k.div_is_zero);

    let shear = MapTuple::new(vec![
        Series::from_terms(2, d, [(vec![1, 0], int(1)), (vec![0, 2], int(1))])?,
        Series::var(2, d, 1),
    ])?;
    println!("{}", serde_json::to_string(&keller_check(&shear)?)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
