use std::fmt::Write;

use crate::agreement::AgreementResult;

/// One row of the results table: the classic and weighted analyses of one data set.
#[derive(Debug, Clone)]
pub struct TableRow<'a> {
    pub label: String,
    pub classic: &'a AgreementResult,
    pub weighted: &'a AgreementResult,
}

/// Rounds half away from zero to `decimals` places and formats without a
/// negative zero.
pub fn round_half_away(x: f64, decimals: u32) -> String {
    let scale = 10f64.powi(decimals as i32);
    let mut v = (x * scale).round() / scale;
    if v == 0.0 {
        v = 0.0;
    }
    format!("{v:.prec$}", prec = decimals as usize)
}

/// p-values below 0.001 print as `<0.001`.
pub fn format_p(p: f64) -> String {
    if p < 0.001 {
        "<0.001".to_string()
    } else {
        round_half_away(p, 2)
    }
}

/// `k (lo – hi)` at two decimals.
pub fn format_k(res: &AgreementResult) -> String {
    format!(
        "{} ({} – {})",
        round_half_away(res.fit.slope, 2),
        round_half_away(res.fit.ci_low, 2),
        round_half_away(res.fit.ci_high, 2)
    )
}

fn cells(res: &AgreementResult) -> [String; 3] {
    [round_half_away(res.fit.r, 2), format_p(res.fit.p_value), format_k(res)]
}

/// Plain-text table of r, p and k (with its interval) for each row, classic
/// analysis on the left and weighted on the right.
///
/// Cells are separated by at least two spaces; no cell contains two
/// consecutive spaces.
pub fn format_table(rows: &[TableRow<'_>]) -> String {
    const W: [usize; 7] = [6, 7, 8, 24, 7, 8, 24];
    let mut out = String::new();
    let line = |out: &mut String, cols: [&str; 7]| {
        let mut s = String::new();
        for (c, w) in cols.iter().zip(W) {
            // pad by characters; the en dash is multi-byte
            let pad = w.saturating_sub(c.chars().count()).max(2);
            s.push_str(c);
            s.extend(std::iter::repeat_n(' ', pad));
        }
        let _ = writeln!(out, "{}", s.trim_end());
    };
    let _ = writeln!(out, "{:<6}{:<39}Weighted average", "", "Bland-Altman (mean)");
    line(&mut out, ["Case", "r", "p", "k (95% CI)", "r", "p", "k (95% CI)"]);
    for row in rows {
        let [r1, p1, k1] = cells(row.classic);
        let [r2, p2, k2] = cells(row.weighted);
        line(&mut out, [&row.label, &r1, &p1, &k1, &r2, &p2, &k2]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(round_half_away(0.125, 2), "0.13");
        assert_eq!(round_half_away(-0.125, 2), "-0.13");
        assert_eq!(round_half_away(0.2154, 2), "0.22");
        assert_eq!(round_half_away(-0.0999, 2), "-0.10");
    }

    #[test]
    fn no_negative_zero() {
        assert_eq!(round_half_away(-1e-17, 2), "0.00");
        assert_eq!(round_half_away(-0.004, 2), "0.00");
    }

    #[test]
    fn p_formatting() {
        assert_eq!(format_p(1.0), "1.00");
        assert_eq!(format_p(0.0314), "0.03");
        assert_eq!(format_p(1e-5), "<0.001");
    }
}
