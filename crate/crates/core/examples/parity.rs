// `F` is odd iff its generator is odd, and the inverse is `-F(-z)` iff the
// generator is even.
//
// cargo run --example parity

use jetflow::prelude::*;
use jetflow::random::Sampler;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Sampler::new(5);
    let d = 7;
    for (label, a) in [
        ("odd", s.odd_derivation(2, 3, d)),
        ("even", s.even_derivation(2, 2, d)),
        ("mixed", s.mixed_parity_derivation(2, d)),
    ] {
        let f = exp_flow(&a, &int(1))?;
        let r = parity_check(&f)?;
        println!(
            "{label:5}: F odd {:5} a odd {:5} a even {:5} G = -F(-z) {:5}",
            r.f_odd, r.a_odd, r.a_even, r.g_equals_minus_f_minus
        );
        assert!(r.consistent());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
