//! File loading and element parsing for the subcommands.
//!
//! Every loader keeps the typed core error so the caller can distinguish
//! mathematical defects (exit 1) from unusable input (exit 2).

use std::fs;
use std::path::Path;

use liew_core::extension::Extension;
use liew_core::scalar::parse_rational;
use liew_core::space::{Space, Vector};
use liew_core::{Error, FormalAction, Jet, LieAlgebra, Result, WreathAlgebra, WreathElement};

fn read_text(path: &Path, what: &str) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::invalid(what, format!("{}: {e}", path.display())))
}

pub fn load_lie(path: &Path) -> Result<LieAlgebra> {
    LieAlgebra::from_json_str(&read_text(path, "lie algebra file")?)
}

pub fn load_extension(path: &Path) -> Result<Extension> {
    Extension::from_json_str(&read_text(path, "extension file")?)
}

pub fn load_action(path: &Path) -> Result<FormalAction> {
    FormalAction::from_json_str(&read_text(path, "action file")?)
}

pub fn load_jet(path: &Path) -> Result<Jet> {
    Jet::from_json_str(&read_text(path, "jet file")?)
}

pub fn load_wreath_element(path: &Path, wreath: &WreathAlgebra) -> Result<WreathElement> {
    let text = read_text(path, "wreath element file")?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::invalid("wreath element file", format!("{}: {e}", path.display())))?;
    WreathElement::from_json(&value, wreath)
}

/// An element given as a basis label or as comma-separated rationals.
pub fn parse_element(space: &Space, text: &str) -> Result<Vector> {
    if let Some(i) = space.label_index(text) {
        return Ok(Vector::basis(space, i));
    }
    let coords = text
        .split(',')
        .map(|part| parse_rational(part.trim()))
        .collect::<Result<Vec<_>>>()
        .map_err(|_| {
            Error::invalid(
                "element",
                format!(
                    "{text:?} is neither a basis label of ({}) nor a comma-separated coordinate list",
                    space.signature()
                ),
            )
        })?;
    Vector::new(space.clone(), coords)
}
