// Jacobian determinant and matrix of the flow, directly and through
// `exp(t(A + div a)) 1` and `exp(t(A + R_Ja)) Id`, with `t` symbolic.
//
// cargo run --example jacobian

use jetflow::prelude::*;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // a = (z1 z2, z1^2); the exponential sides are exact to degree 5, the
    // direct sides need the flow one degree higher
    let d = 6;
    let a = Derivation::from_components(vec![
        Series::monomial(2, d, vec![1, 1], int(1))?,
        Series::monomial(2, d, vec![2, 0], int(1))?,
    ])?;
    let at = a.lift::<TPoly>();
    let t = TPoly::t();
    let ft = exp_flow(&at, &t)?;

    let by_exp = jacobian_det_exp(&at, &t)?;
    let direct = jacobian_det_direct(&ft);
    println!("J(F_t) = {}", by_exp.truncate(3)?);
    assert!(by_exp.eq_mod(&direct, d - 1));

    let id = SeriesMatrix::identity(2, 2, d);
    let jm = jacobian_matrix_exp(&at, &id, &t)?;
    assert!(jm.eq_mod(&jacobian_matrix_direct(&ft), d - 1));
    assert!(jm.det().eq_mod(&by_exp, d - 1));

    // u(F_t) J(F_t) for u = 1 + z2
    let u = Series::<TPoly>::one(2, d).try_add(&Series::var(2, d, 1))?;
    let lhs = jacobian_det_exp_general(&at, &u, &t)?;
    let rhs = u.compose(&ft)?.try_mul(&direct)?;
    assert!(lhs.eq_mod(&rhs, d - 1));
    println!("all Jacobian identities hold modulo degree > {}", d - 1);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
