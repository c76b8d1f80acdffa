//! CSV serialisation. Values are written with 12 digits after the decimal
//! point; coefficient deviations, which are usually round-off sized, use
//! scientific notation with 12 significant digits. Lines end in `\n`.

use std::io::{self, Write};

use super::{FidelityPoint, ParametricPoint, SweepTable, VerificationReport};
use crate::channels::ChannelKind;

pub const SWEEP_HEADER: &str = "alpha,p11,p12,p13,p21,p22,p23,p31,p32,p33,mean,delta4";
pub const PARAMETRIC_HEADER: &str = "alpha,delta4,mean";
pub const FIDELITY_HEADER: &str = "alpha,delta1,delta4";
pub const REPORT_HEADER: &str = "channel,row,col,max_coeff_dev,pass";

pub fn format_value(x: f64) -> String {
    // avoid "-0.000000000000" for tiny negative round-off
    let s = format!("{x:.12}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn format_deviation(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else {
        "inf".to_string()
    }
}

fn header(w: &mut impl Write, base: &str, tagged: bool) -> io::Result<()> {
    if tagged {
        writeln!(w, "channel,{base}")
    } else {
        writeln!(w, "{base}")
    }
}

fn tag(w: &mut impl Write, channel: ChannelKind, tagged: bool) -> io::Result<()> {
    if tagged {
        write!(w, "{channel},")?;
    }
    Ok(())
}

/// Writes one or more sweeps. With `tagged`, a leading `channel` column is
/// added so several channels can share one file.
pub fn write_sweep_csv(w: &mut impl Write, tables: &[SweepTable], tagged: bool) -> io::Result<()> {
    header(w, SWEEP_HEADER, tagged)?;
    for table in tables {
        for row in &table.rows {
            tag(w, table.channel, tagged)?;
            write!(w, "{}", format_value(row.alpha))?;
            for p in row.probabilities.iter().flatten() {
                write!(w, ",{}", format_value(*p))?;
            }
            writeln!(w, ",{},{}", format_value(row.mean), format_value(row.delta4))?;
        }
    }
    Ok(())
}

pub fn write_parametric_csv(
    w: &mut impl Write,
    curves: &[(ChannelKind, Vec<ParametricPoint>)],
    tagged: bool,
) -> io::Result<()> {
    header(w, PARAMETRIC_HEADER, tagged)?;
    for (channel, points) in curves {
        for p in points {
            tag(w, *channel, tagged)?;
            writeln!(
                w,
                "{},{},{}",
                format_value(p.alpha),
                format_value(p.delta4),
                format_value(p.mean)
            )?;
        }
    }
    Ok(())
}

pub fn write_fidelity_csv(
    w: &mut impl Write,
    curves: &[(ChannelKind, Vec<FidelityPoint>)],
    tagged: bool,
) -> io::Result<()> {
    header(w, FIDELITY_HEADER, tagged)?;
    for (channel, points) in curves {
        for p in points {
            tag(w, *channel, tagged)?;
            writeln!(
                w,
                "{},{},{}",
                format_value(p.alpha),
                format_value(p.delta1),
                format_value(p.delta4)
            )?;
        }
    }
    Ok(())
}

pub fn write_report_csv(w: &mut impl Write, report: &VerificationReport) -> io::Result<()> {
    writeln!(w, "{REPORT_HEADER}")?;
    for e in &report.entries {
        writeln!(
            w,
            "{},{},{},{},{}",
            e.channel,
            e.input.row(),
            e.input.col(),
            format_deviation(e.max_coeff_dev),
            e.pass
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{SweepRow, VerificationEntry};
    use crate::game::GameInput;

    #[test]
    fn value_format() {
        assert_eq!(format_value(1.0), "1.000000000000");
        assert_eq!(format_value(5.0 / 9.0), "0.555555555556");
        assert_eq!(format_value(-1e-17), "0.000000000000");
        assert_eq!(format_deviation(1.5e-15), "1.50000000000e-15");
    }

    #[test]
    fn sweep_layout() {
        let table = SweepTable {
            channel: ChannelKind::BitFlip,
            rows: vec![SweepRow {
                alpha: 0.0,
                probabilities: [[1.0; 3]; 3],
                mean: 1.0,
                delta4: 1.0,
            }],
        };
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, std::slice::from_ref(&table), false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(SWEEP_HEADER));
        let row = lines.next().unwrap();
        assert_eq!(row.split(',').count(), 12);
        assert!(!row.ends_with(','));
        assert!(!text.contains('\r'));

        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &[table], true).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("channel,alpha,"));
        assert!(text.lines().nth(1).unwrap().starts_with("bit-flip,0.000000000000,"));
    }

    #[test]
    fn report_layout() {
        let report = VerificationReport {
            tolerance: 1e-7,
            entries: vec![VerificationEntry {
                channel: ChannelKind::PhaseDamping,
                input: GameInput::new(1, 3).unwrap(),
                max_coeff_dev: 0.0,
                pass: true,
            }],
        };
        let mut buf = Vec::new();
        write_report_csv(&mut buf, &report).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "channel,row,col,max_coeff_dev,pass\nphase-damping,1,3,0.00000000000e0,true\n"
        );
    }
}
