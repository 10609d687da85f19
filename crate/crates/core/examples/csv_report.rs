//! Reads a paired CSV, analyses it with known within-subject variances and
//! writes a JSON report and an SVG plot.
//!
//! Run with `cargo run --example csv_report -- pairs.csv 37.4 83.1 out/`.
//! Without arguments a small synthetic file is created first.

use std::path::PathBuf;

use ivw_agreement::io::{self, emit_report, format_paired, PlotOptions};
use ivw_agreement::synthesis::generate;
use ivw_agreement::{analyze, AxisSpec, CasePreset, Direction, WithinSubjectVariance};

fn main() -> ivw_agreement::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (input, swa, swb, out) = match args.as_slice() {
        [input, swa, swb, out] => (
            PathBuf::from(input),
            swa.parse().expect("numeric s_w^2(A)"),
            swb.parse().expect("numeric s_w^2(B)"),
            PathBuf::from(out),
        ),
        _ => {
            let out = std::env::temp_dir().join("ivw-csv-report");
            std::fs::create_dir_all(&out).map_err(|e| ivw_agreement::Error::Io {
                path: out.clone(),
                source: e,
            })?;
            let input = out.join("pairs.csv");
            io::write_text(&input, &format_paired(&generate(&CasePreset::D.config())?))?;
            (input, 0.25, 20.25, out)
        }
    };

    let sample = io::read_paired(&input)?;
    let v = WithinSubjectVariance::new(swa, swb)?;
    let res = analyze(&sample, AxisSpec::inverse_variance(&v), Direction::default(), 0.95)?;

    let report = out.join("report.json");
    let plot = out.join("plot.svg");
    io::write_text(&report, &emit_report(&res))?;
    io::write_svg(&res, &plot, PlotOptions::default())?;
    println!("read {} pairs from {}", sample.len(), input.display());
    println!("wrote {} and {}", report.display(), plot.display());
    Ok(())
}
