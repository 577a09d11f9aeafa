pub mod enumerate;
pub mod radial;
pub mod verify;

use std::collections::BTreeMap;

use serde_json::Value;

/// `params` entry helper.
pub(crate) fn params(pairs: Vec<(&str, Value)>) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
