// Sparse truncated series: products drop everything above the truncation
// degree, and composition substitutes a map into a series.
//
// cargo run --example series_arithmetic

use jetflow::prelude::*;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let d = 5;
    let x = Series::var(2, d, 0);
    let y = Series::var(2, d, 1);
    let one = Series::one(2, d);

    let p = &(&one + &x) * &(&one - &x);
    println!("(1 + z1)(1 - z1) = {p}");
    assert_eq!(p.to_string(), "1 - z1^2");

    // (1 + z1 + z2)^7 truncated at degree 5
    let q = (&one + &(&x + &y)).pow(7);
    println!("(1 + z1 + z2)^7 = {q}  (mod degree > {d})");
    assert_eq!(q.coeff(&[2, 3]), int(21 * 10));

    println!("d/dz1 (z1^2 z2) = {}", (&(&x * &x) * &y).partial(0)?);

    // u = z1^2 under z -> (z1 + z2, z2)
    let f = MapTuple::new(vec![&x + &y, y.clone()])?;
    let u = (&x * &x).compose(&f)?;
    println!("z1^2 (z1 + z2, z2) = {u}");
    assert_eq!(u.to_string(), "z1^2 + 2*z1*z2 + z2^2");

    println!("order of 3/2 z1 + z1 z2: {}", (&x.scale(&rat(3, 2)) + &(&x * &y)).order());
    println!("json: {}", u.to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
