//! File formats: paired and replicated CSV input, JSON reports, the
//! plain-text results table and SVG plots.

mod plot;
mod report;
mod table;
mod tabular;

pub use plot::{render_svg, write_svg, PlotFrame, PlotOptions, PLOT_HEIGHT, PLOT_WIDTH};
pub use report::{emit_report, parse_report, ReportDocument, REPORT_FORMAT_VERSION};
pub use table::{format_p, format_table, round_half_away, TableRow};
pub use tabular::{format_paired, format_replicated, parse_paired, parse_replicated};

use std::path::Path;

use crate::agreement::{PairedSample, ReplicatedSample};
use crate::error::{Error, Result};

pub fn read_paired(path: impl AsRef<Path>) -> Result<PairedSample> {
    parse_paired(&read_text(path)?)
}

pub fn read_replicated(path: impl AsRef<Path>) -> Result<ReplicatedSample> {
    parse_replicated(&read_text(path)?)
}

pub fn read_text(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_text(path: impl AsRef<Path>, contents: &str) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}
