use zetakit::IdentityReport;

use crate::args::Format;

pub const TSV_HEADER: &str = "identity\tparams\tresidual\ttolerance\tstatus";

fn tsv_row(r: &IdentityReport) -> String {
    let status = serde_json::to_value(r.status).expect("status serializes");
    format!(
        "{}\t{}\t{}\t{}\t{}",
        r.identity,
        serde_json::Value::Object(r.params.clone()),
        r.residual,
        serde_json::to_string(&r.tolerance).expect("finite tolerance"),
        status.as_str().expect("status is a string"),
    )
}

/// One line per report, with a header first for TSV.
pub fn render(reports: &[IdentityReport], format: Format) -> String {
    let mut out = String::new();
    if format == Format::Tsv {
        out.push_str(TSV_HEADER);
        out.push('\n');
    }
    for r in reports {
        match format {
            Format::Json => out.push_str(&r.to_json()),
            Format::Tsv => out.push_str(&tsv_row(r)),
        }
        out.push('\n');
    }
    out
}
