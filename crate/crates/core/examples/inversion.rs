// The formal inverse by `exp(-A) z`, by iterated differences, and by a
// direct degree-by-degree solve.
//
// cargo run --example inversion

use jetflow::prelude::*;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = MapTuple::new(vec![Series::from_terms(1, 6, [(vec![1], int(1)), (vec![2], int(1))])?])?;
    let g = invert_solve(&f)?;
    assert_eq!(invert_exp(&f)?, g);
    assert_eq!(invert_iterates(&f)?, g);
    // signed Catalan numbers
    println!("inverse of x + x^2: {}", g.component(0));
    assert_eq!(g.component(0).to_string(), "z1 - z1^2 + 2*z1^3 - 5*z1^4 + 14*z1^5 - 42*z1^6");

    let id = MapTuple::identity(1, 6);
    assert_eq!(f.compose(&g)?, id);
    assert_eq!(g.compose(&f)?, id);

    let h = MapTuple::new(vec![
        Series::from_terms(2, 6, [(vec![1, 0], int(1)), (vec![1, 1], int(2)), (vec![0, 3], int(-1))])?,
        Series::from_terms(2, 6, [(vec![0, 1], int(1)), (vec![2, 0], rat(1, 2))])?,
    ])?;
    let k = invert_exp(&h)?;
    println!("inverse of\n{}\nis\n{}", h.to_text(), k.to_text());
    assert_eq!(h.compose(&k)?, MapTuple::identity(2, 6));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
