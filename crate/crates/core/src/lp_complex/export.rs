//! Text exports: coordinate-format matrices and coefficient CSVs.

use std::io::Write;

use crate::error::Result;
use crate::lp_complex::{ChainVector, CochainVector, Operator};
use crate::scalar::Real;

/// Seventeen significant digits, scientific notation; `-0` prints as `0`.
pub fn fmt_sig17(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

/// Writes `row col value` lines for the nonzero entries, after a header
/// naming group, resolution, boundary index and radius.
pub fn write_coordinate_matrix<T: Real, W: Write>(op: &Operator<T>, out: &mut W) -> Result<()> {
    let m = &op.matrix;
    let nnz = m.iter().filter(|v| !v.is_zero()).count();
    writeln!(out, "% lplab coordinate matrix")?;
    writeln!(
        out,
        "% group={} resolution={} i={} R={} dual={}",
        op.group.name(),
        op.resolution,
        op.degree,
        if op.dual { op.codomain.radius() } else { op.domain.radius() },
        op.dual
    )?;
    writeln!(out, "{} {} {}", m.nrows(), m.ncols(), nnz)?;
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            let v = m[(r, c)];
            if !v.is_zero() {
                writeln!(out, "{r} {c} {}", fmt_sig17(v.to_f64().unwrap_or(f64::NAN)))?;
            }
        }
    }
    Ok(())
}

fn write_rows<W: Write>(rows: impl Iterator<Item = (usize, String, f64)>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["copy", "element", "value"])?;
    for (copy, elem, v) in rows {
        w.write_record([copy.to_string(), elem, fmt_sig17(v)])?;
    }
    w.flush()?;
    Ok(())
}

/// CSV `copy,element,value` of the nonzero coefficients, in basis order.
pub fn write_chain_csv<T: Real, W: Write>(x: &ChainVector<T>, out: W) -> Result<()> {
    write_rows(x.support().map(|(c, h, v)| (c, h.to_string(), v.to_f64().unwrap_or(f64::NAN))), out)
}

pub fn write_cochain_csv<T: Real, W: Write>(y: &CochainVector<T>, out: W) -> Result<()> {
    write_rows(y.support().map(|(c, h, v)| (c, h.to_string(), v.to_f64().unwrap_or(f64::NAN))), out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp_complex::{assemble_boundary, TruncatedSpace};
    use crate::resolutions::cyclic_infinite_resolution;
    use crate::Rational;

    #[test]
    fn sig17() {
        assert_eq!(fmt_sig17(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_sig17(-0.0), "0.0000000000000000e0");
        assert_eq!(fmt_sig17(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn coordinate_file() {
        let res = cyclic_infinite_resolution::<Rational>().unwrap();
        let op = assemble_boundary::<Rational, f64>(&res, 1, 1).unwrap();
        let mut buf = Vec::new();
        write_coordinate_matrix(&op, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "% group=Z resolution=cyclic-inf i=1 R=1 dual=false");
        assert_eq!(lines[2], "5 3 6");
        assert_eq!(lines.len(), 3 + 6);
    }

    #[test]
    fn vector_csv() {
        let h = crate::groups::make_group("heisenberg".parse().unwrap()).unwrap();
        let s = TruncatedSpace::chains(&h, 1, 4, 2.0).unwrap();
        let z = h.parse_element("(0,0,1)").unwrap();
        let x = ChainVector::delta(s, 0, &z).unwrap();
        let mut buf = Vec::new();
        write_chain_csv(&x, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "copy,element,value\n0,\"(0,0,1)\",1.0000000000000000e0\n");
    }
}
