//! Allowed-j table for every charge up to `|k_max|`.

use monopole_core::pauli::spinor_quantization;
use monopole_core::HalfInt;
use serde_json::json;

use super::params;
use crate::report::{Report, Table};
use crate::{CliError, RunConfig};

const LIST_LEN: usize = 5;

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let k_max = cfg.k.unwrap_or(HalfInt::ONE).abs();
    let mut report = Report::new(
        "enumerate",
        params(vec![("k_max", json!(k_max.to_string())), ("count", json!(LIST_LEN))]),
        Table::new(&["k", "j_min", "j_list"]),
    );
    let t = k_max.twice_value();
    for tk in -t..=t {
        let k = HalfInt::from_twice(tk);
        let q = spinor_quantization(k, LIST_LEN);
        let list: Vec<String> = q.j_list.iter().map(|j| j.to_string()).collect();
        report.table.rows.push(vec![k.to_string(), q.j_min.to_string(), list.join(" ")]);
        report.results.push(json!({
            "k": k.to_string(),
            "j_min": q.j_min.to_string(),
            "j_list": list,
            "free": q.free,
        }));
    }
    Ok(report)
}
