//! Truncated comparison of the closed generating function with its definition.

use transvect::generating::{z_closed_series, z_series_report};

fn main() -> transvect::Result<()> {
    let z = z_closed_series(2)?;
    let cv = z.coefficient_of(&[("h", 0), ("u", 0), ("v", 1), ("w", 0)])?;
    println!("[v] Z = {cv}");
    let rep = z_series_report(2, 1, 4)?;
    println!("{}", serde_json::to_string_pretty(&rep).expect("serializable"));
    Ok(())
}
