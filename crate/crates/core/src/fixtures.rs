//! Resolution models shipped with the crate.
//!
//! Fixtures are compiled in; setting `MOTIVIC_FIXTURES` to a directory makes
//! [`load_model`] and [`load_template`] read `<dir>/<name>.json` instead.

use std::path::PathBuf;

use serde::de::DeserializeOwned;

use crate::error::{Error, Result};
use crate::stringy::{SncModel, SncTemplate};

pub const FIXTURE_ENV: &str = "MOTIVIC_FIXTURES";

const EMBEDDED: &[(&str, &str)] = &[
    ("tame_direct", include_str!("../fixtures/tame_direct.json")),
    ("tame_e1", include_str!("../fixtures/tame_e1.json")),
    ("tame_e2", include_str!("../fixtures/tame_e2.json")),
    ("wild_e1", include_str!("../fixtures/wild_e1.json")),
    ("wild_n1", include_str!("../fixtures/wild_n1.json")),
    ("wild_d2n", include_str!("../fixtures/wild_d2n.json")),
];

/// Names of the bundled fixtures. `wild_d2n` is a template.
pub fn names() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(n, _)| *n)
}

pub fn is_template(name: &str) -> bool {
    name == "wild_d2n"
}

fn source(name: &str) -> Result<String> {
    if let Some(dir) = std::env::var_os(FIXTURE_ENV) {
        let path = PathBuf::from(dir).join(format!("{name}.json"));
        return std::fs::read_to_string(&path)
            .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())));
    }
    EMBEDDED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| text.to_string())
        .ok_or_else(|| Error::Fixture(format!("unknown fixture `{name}`")))
}

fn parse<T: DeserializeOwned>(name: &str) -> Result<T> {
    let text = source(name)?;
    serde_json::from_str(&text).map_err(|e| Error::Fixture(format!("{name}: {e}")))
}

pub fn load_model(name: &str) -> Result<SncModel> {
    parse(name)
}

pub fn load_template(name: &str) -> Result<SncTemplate> {
    parse(name)
}

pub fn tame_direct() -> Result<SncModel> {
    load_model("tame_direct")
}

pub fn tame_e1() -> Result<SncModel> {
    load_model("tame_e1")
}

pub fn tame_e2() -> Result<SncModel> {
    load_model("tame_e2")
}

pub fn wild_e1() -> Result<SncModel> {
    load_model("wild_e1")
}

pub fn wild_n1() -> Result<SncModel> {
    load_model("wild_n1")
}

pub fn wild_template() -> Result<SncTemplate> {
    load_template("wild_d2n")
}
