//! Text formatting shared by the CSV and JSON writers.

/// `x` in scientific notation with 17 significant digits; round-trips exactly.
pub fn sig17(x: f64) -> String {
    format!("{:.16e}", x)
}
