use std::io::Write;

use eulerian_core::IntPoly;

pub struct Row {
    pub family: String,
    pub params: String,
    pub poly: IntPoly,
}

/// `family,params,coeffs` with the coefficients joined by `;`.
pub fn write_csv(out: &mut impl Write, rows: impl IntoIterator<Item = Row>) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["family", "params", "coeffs"])?;
    for row in rows {
        let coeffs: Vec<String> = row.poly.coeffs().iter().map(ToString::to_string).collect();
        w.write_record([row.family, row.params, coeffs.join(";")])?;
    }
    w.flush()?;
    Ok(())
}
