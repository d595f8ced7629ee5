// Recovering the generator `a` of `F = exp(a d/dz) z` two ways and
// checking the round trip.
//
// cargo run --example generator

use jetflow::prelude::*;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // F = x + x^2
    let f = MapTuple::new(vec![Series::from_terms(1, 6, [(vec![1], int(1)), (vec![2], int(1))])?])?;
    let a = infer_generator_recursive(&f)?;
    let b = infer_generator_log(&f)?;
    println!("a(x) = {}", a.component(0));
    assert_eq!(a, b);
    assert_eq!(a.component(0).coeff(&[4]), rat(3, 2));

    let report = verify_generator(&f, &a);
    println!("exp(A) x = F modulo degree > {}: {}", report.degree, report.passed());
    assert!(report.passed());

    // exp(tA) at t = 3 is the third iterate
    let f3 = exp_flow(&a, &int(3))?;
    assert_eq!(f3, f.iterate(3)?);
    println!("F(F(F(x))) = {}", f3.component(0));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
