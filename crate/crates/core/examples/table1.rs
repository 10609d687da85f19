//! Prints the four synthetic cases analysed on both horizontal axes.
//!
//! Run with `cargo run --example table1`.

use ivw_agreement::cli::table1_results;
use ivw_agreement::io::{format_table, TableRow};

fn main() -> ivw_agreement::Result<()> {
    let results = table1_results()?;
    let rows: Vec<TableRow<'_>> = results
        .iter()
        .map(|(case, classic, weighted)| TableRow {
            label: case.label().to_string(),
            classic,
            weighted,
        })
        .collect();
    print!("{}", format_table(&rows));
    Ok(())
}
