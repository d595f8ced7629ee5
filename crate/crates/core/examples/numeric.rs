// Floating point exponentials for fields whose linear part is not
// nilpotent, where exact coefficients would be transcendental.
//
// cargo run --example numeric

use jetflow::operators::{DEFAULT_EPS, DEFAULT_KMAX};
use jetflow::prelude::*;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // exp(x d/dx) x = e x
    let a = Derivation::<f64>::from_components(vec![Series::var(1, 3, 0)])?;
    assert!(matches!(a.exactness(), Err(JetError::NotExact)));
    let y = exp_numeric(&a, &Series::var(1, 3, 0), 1.0, DEFAULT_EPS, DEFAULT_KMAX)?;
    println!("exp(x d/dx) x = {y}");
    assert!((y.coeff(&[1]) - std::f64::consts::E).abs() < 1e-12);

    // a field with a rotation as its linear part and a quadratic term
    let b = Derivation::<f64>::from_components(vec![
        Series::var(2, 4, 1).scale(&-1.0),
        Series::var(2, 4, 0).try_add(&Series::monomial(2, 4, vec![2, 0], 0.5)?)?,
    ])?;
    let z1 = exp_numeric(&b, &Series::var(2, 4, 0), 0.5, DEFAULT_EPS, DEFAULT_KMAX)?;
    println!("flow of the rotation field at t = 1/2, first component:\n  {z1}");
    assert!((z1.coeff(&[1, 0]) - 0.5f64.cos()).abs() < 1e-12);

    let err = exp_numeric(&a, &Series::var(1, 3, 0), 1.0, DEFAULT_EPS, 5).unwrap_err();
    println!("with only 5 terms: {err}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
