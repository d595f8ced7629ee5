// The seeded random identity sweep, as run by `jetflow selftest`.
//
// cargo run --release --example selftest

use jetflow::suite::selftest;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let r = selftest(42, Some(2), 5, 6);
    for c in &r.cases {
        println!("case {} keller={} checks={} passed={}", c.case, c.keller, c.checks, c.passed);
    }
    assert!(r.passed);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
