//! Compares the predicted covariance between the difference and the
//! horizontal axis with a Monte Carlo estimate for several weightings.
//!
//! Run with `cargo run --release --example covariance_prediction`.

use ivw_agreement::agreement::predicted_covariance;
use ivw_agreement::synthesis::monte_carlo_covariance;
use ivw_agreement::{SyntheticConfig, WeightPair, WithinSubjectVariance};

fn main() -> ivw_agreement::Result<()> {
    let config = SyntheticConfig {
        n: 20_000,
        s_a: 0.5,
        s_b: 4.5,
        exact_moments: false,
        ..SyntheticConfig::default()
    };
    let (var_a, var_b) = config.error_variances();
    let v = WithinSubjectVariance::new(var_a, var_b)?;

    println!("{:<22} {:>10} {:>12} {:>8}", "weights (alpha, beta)", "predicted", "simulated", "se");
    for w in [
        WeightPair::EQUAL,
        WeightPair::inverse_variance(&v),
        WeightPair::new(0.0, 1.0)?,
        WeightPair::new(1.0, 0.0)?,
    ] {
        let est = monte_carlo_covariance(&config, w, 40)?;
        println!(
            "{:<22} {:>10.4} {:>12.4} {:>8.4}",
            format!("({}, {})", w.alpha, w.beta),
            predicted_covariance(w, &v),
            est.mean_cov,
            est.se
        );
    }
    Ok(())
}
