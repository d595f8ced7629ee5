// The flow `F_t = exp(tA) z` over `Q[t]`, its specializations, and the
// differential identities along it.
//
// cargo run --example deformation

use jetflow::prelude::*;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = Derivation::from_components(vec![Series::monomial(1, 4, vec![2], int(1))?])?;
    let ft = deform(&a)?;
    // x / (1 - tx)
    println!("{}", ft.to_text());
    assert_eq!(ft.to_text(), "F1 = z1 + t*z1^2 + t^2*z1^3 + t^3*z1^4");
    println!("dF/dt = {}", t_derivative(ft.map().component(0)));

    let f1 = ft.specialize(&int(1));
    assert_eq!(ft.specialize(&int(2)), f1.compose(&f1)?);
    assert_eq!(ft.specialize(&int(-1)), invert_solve(&f1)?);
    println!("F at t = 1/3: {}", ft.specialize(&rat(1, 3)).component(0));

    let b = Derivation::from_components(vec![
        Series::from_terms(2, 6, [(vec![0, 2], int(1)), (vec![1, 1], int(-1))])?,
        Series::monomial(2, 6, vec![0, 2], int(1))?,
    ])?;
    for r in [
        check_flow_ode(&b, &Series::var(2, 6, 0))?,
        check_field_transport(&b)?,
        check_jacobian_ode(&b)?,
    ] {
        for c in &r.checks {
            println!("{:5} {}", c.passed, c.name);
        }
        assert!(r.passed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
