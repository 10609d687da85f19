//! When one method has negligible error the weighted axis collapses onto it.
//! Here B is the reference, so the horizontal axis equals B and the trend
//! reflects only the bias of A.
//!
//! Run with `cargo run --example reference_method`.

use ivw_agreement::synthesis::generate;
use ivw_agreement::{analyze, AxisSpec, Direction, SyntheticConfig, WeightPair};

fn main() -> ivw_agreement::Result<()> {
    let config = SyntheticConfig {
        k_a: 1.1,
        k_b: 1.0,
        s_a: 2.0,
        s_b: 0.0,
        ..SyntheticConfig::default()
    };
    let sample = generate(&config)?;
    let axis = AxisSpec::WeightedAverage(WeightPair::new(0.0, 1.0)?);
    let res = analyze(&sample, axis, Direction::AMinusB, 0.95)?;

    let max_gap = res
        .axis_values()
        .iter()
        .zip(sample.b())
        .map(|(x, b)| (x - b).abs())
        .fold(0.0, f64::max);
    println!("max |axis - B|  {max_gap:.2e}");
    println!(
        "k               {:.3} (95% CI {:.3} to {:.3}), expected about {:.3}",
        res.fit.slope,
        res.fit.ci_low,
        res.fit.ci_high,
        config.k_a / config.k_b - 1.0
    );
    Ok(())
}
