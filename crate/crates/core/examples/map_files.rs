// Reading map files and writing them back in canonical form.
//
// cargo run --example map_files

use jetflow::cli::parse_map;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let text = "# a map tangent to the identity\nvars: x y\nF1 = x + (y - x)^2\nF2 = y + 3/2*x^3\n";
    let file = parse_map(text, 4)?;
    assert!(file.in_f1);
    let canonical = file.map.to_map_file(&file.vars);
    print!("{canonical}");
    assert_eq!(parse_map(&canonical, 4)?, file);

    let err = parse_map("vars: x\nF1 = x + 0.5*x^2\n", 4).unwrap_err();
    println!("error: {err}");
    assert_eq!((err.line, err.column), (2, 10));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
