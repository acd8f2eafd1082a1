//! Deterministic text output.
//!
//! All numeric columns carry 17 significant digits (`{:.16e}`), lines
//! end with a bare LF, and files end with a single final newline — two
//! runs over the same input produce byte-identical files.

use std::io::Write;

use ptsim_core::interference::CoincidenceCurve;
use ptsim_core::matrix::SchurFactorization;

/// Writes coincidence curves as `gamma,p_boson,p_fermion,method` rows.
/// Curves are emitted in the order given, each in grid order.
pub fn write_curves(mut out: impl Write, curves: &[CoincidenceCurve]) -> std::io::Result<()> {
    write!(out, "gamma,p_boson,p_fermion,method")?;
    for curve in curves {
        for p in &curve.points {
            write!(
                out,
                "\n{:.16e},{:.16e},{:.16e},{}",
                p.gamma, p.p_boson, p.p_fermion, p.method
            )?;
        }
    }
    writeln!(out)?;
    Ok(())
}

/// Writes the threshold factorization: the threshold itself, then the
/// unitary and triangular factors as a flat `matrix,row,col,re,im`
/// table.
pub fn write_schur(
    mut out: impl Write,
    gamma_th: f64,
    factorization: &SchurFactorization,
) -> std::io::Result<()> {
    writeln!(out, "gamma_th,{:.16e}", gamma_th)?;
    writeln!(out, "matrix,row,col,re,im")?;
    for (name, m) in [
        ("rotation", &factorization.rotation),
        ("triangular", &factorization.triangular),
    ] {
        for row in 0..m.rows() {
            for col in 0..m.cols() {
                let v = m[(row, col)];
                writeln!(out, "{},{},{},{:.16e},{:.16e}", name, row, col, v.re, v.im)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ptsim_core::interference::{CoincidencePoint, Method};
    use ptsim_core::system::{rotation_at_threshold, ModeNetworkSpec};

    #[test]
    fn curve_csv_layout_is_exact() {
        let curve = CoincidenceCurve::new(
            vec![
                CoincidencePoint {
                    gamma: 0.0,
                    p_boson: 0.0,
                    p_fermion: 1.0,
                    method: Method::Scattering,
                },
                CoincidencePoint {
                    gamma: 0.5,
                    p_boson: 0.25,
                    p_fermion: 0.5,
                    method: Method::Scattering,
                },
            ],
            "digest".into(),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_curves(&mut buf, &[curve]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let expect = "gamma,p_boson,p_fermion,method\n\
                      0.0000000000000000e0,0.0000000000000000e0,1.0000000000000000e0,scattering\n\
                      5.0000000000000000e-1,2.5000000000000000e-1,5.0000000000000000e-1,scattering\n";
        assert_eq!(text, expect);
        assert!(!text.ends_with("\n\n"));
    }

    #[test]
    fn schur_csv_has_one_threshold_line_and_eight_entries() {
        let spec = ModeNetworkSpec::coupler(1.0).unwrap();
        let f = rotation_at_threshold(&spec, 2.0).unwrap();
        let mut buf = Vec::new();
        write_schur(&mut buf, 2.0, &f).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "gamma_th,2.0000000000000000e0");
        assert_eq!(lines[1], "matrix,row,col,re,im");
        assert_eq!(lines.len(), 2 + 8);
        assert!(lines[2].starts_with("rotation,0,0,"));
        assert!(lines[9].starts_with("triangular,1,1,"));
        assert!(text.ends_with('\n') && !text.ends_with("\n\n"));
    }
}
