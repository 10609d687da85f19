//! Generates case (c), where method A is far more precise than method B, and
//! compares the arithmetic-mean axis against the inverse-variance weighted
//! axis. Writes one SVG per axis into the system temp directory.
//!
//! Run with `cargo run --example classic_vs_weighted`.

use ivw_agreement::io::{write_svg, PlotOptions};
use ivw_agreement::synthesis::generate;
use ivw_agreement::{analyze, AxisSpec, CasePreset, Direction, WithinSubjectVariance};

fn main() -> ivw_agreement::Result<()> {
    let config = CasePreset::C.config();
    let sample = generate(&config)?;
    let (var_a, var_b) = config.error_variances();
    let variances = WithinSubjectVariance::new(var_a, var_b)?;

    let out = std::env::temp_dir();
    for (name, axis) in [
        ("classic", AxisSpec::ArithmeticMean),
        ("weighted", AxisSpec::inverse_variance(&variances)),
    ] {
        let res = analyze(&sample, axis, Direction::BMinusA, 0.95)?;
        println!(
            "{name:<9} bias {:+.3}  LoA [{:.2}, {:.2}]  r {:+.3}  k {:+.3} ({:+.3}, {:+.3})",
            res.bias, res.loa_low, res.loa_high, res.fit.r, res.fit.slope, res.fit.ci_low, res.fit.ci_high
        );
        let path = out.join(format!("{name}.svg"));
        write_svg(&res, &path, PlotOptions::default())?;
        println!("          plot: {}", path.display());
    }
    Ok(())
}
