//! Input loading: files or inline JSON, plus the wire formats shared by
//! several subcommands.
//!
//! Arguments named `--in`, `--left`, `--right` accept either a path or a
//! JSON literal (detected by a leading brace). Structure files may embed
//! their signature under a `"signature"` key; `--sig` overrides it.

use serde_json::Value;

use duality_core::fo::signature::Signature;
use duality_core::fo::structure::FinStructure;
use duality_core::layers::semiring::SemiringTable;
use duality_core::order::boolalg::FinBoolAlg;
use duality_core::order::json::PosetJson;
use duality_core::order::lattice::FinDistLattice;
use duality_core::order::poset::FinPoset;

use crate::report::CliError;

pub fn read_source(arg: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with(['{', '[']) {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| CliError::Fail(format!("cannot read {arg}: {e}")))
}

pub fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Fail(format!("invalid JSON: {e}")))
}

pub fn load_poset(arg: &str) -> Result<FinPoset, CliError> {
    let text = read_source(arg)?;
    let wire: PosetJson =
        serde_json::from_str(&text).map_err(|e| CliError::Fail(format!("invalid JSON: {e}")))?;
    Ok(wire.to_poset()?)
}

/// A lattice given by the poset of all its elements.
pub fn load_lattice(arg: &str) -> Result<FinDistLattice, CliError> {
    Ok(FinDistLattice::from_poset(load_poset(arg)?)?)
}

/// A Boolean algebra: either `{"atoms": [names]}` for the powerset of the
/// listed atoms, or a poset of all elements.
pub fn load_boolalg(arg: &str) -> Result<FinBoolAlg, CliError> {
    let text = read_source(arg)?;
    let v = parse_json(&text)?;
    if let Some(atoms) = v.get("atoms") {
        let names: Vec<String> = serde_json::from_value(atoms.clone())
            .map_err(|e| CliError::Fail(format!("atoms must be a list of names: {e}")))?;
        return Ok(FinBoolAlg::powerset(&names));
    }
    let wire: PosetJson = serde_json::from_value(v)
        .map_err(|e| CliError::Fail(format!("invalid JSON: {e}")))?;
    Ok(FinBoolAlg::from_lattice(FinDistLattice::from_poset(
        wire.to_poset()?,
    )?)?)
}

pub fn load_signature(arg: &str) -> Result<Signature, CliError> {
    let text = read_source(arg)?;
    Ok(Signature::from_json(&parse_json(&text)?)?)
}

/// The default signature for sweep subcommands: one unary relation P.
pub fn default_signature() -> Signature {
    Signature::new(vec![("P".into(), 1)], vec![]).expect("one unary relation")
}

/// Loads a structure. The signature is taken from `--sig` when given,
/// otherwise from the file's `"signature"` field, otherwise the default
/// one-unary-relation signature.
pub fn load_structure(
    arg: &str,
    sig_arg: Option<&str>,
) -> Result<(Signature, FinStructure), CliError> {
    let text = read_source(arg)?;
    let v = parse_json(&text)?;
    let sig = match sig_arg {
        Some(s) => load_signature(s)?,
        None => match v.get("signature") {
            Some(s) => Signature::from_json(s)?,
            None => default_signature(),
        },
    };
    let a = FinStructure::from_json(&sig, &v)?;
    Ok((sig, a))
}

/// Named semirings, or a JSON table: `boolean`, `z2` .. `z12`, or a path
/// or literal with `{"elements", "add", "mul", "zero", "one"}`.
pub fn load_semiring(arg: &str) -> Result<SemiringTable, CliError> {
    match arg {
        "boolean" | "bool" => return Ok(SemiringTable::boolean()),
        _ => {}
    }
    if let Some(q) = arg.strip_prefix('z').and_then(|d| d.parse::<usize>().ok()) {
        return Ok(SemiringTable::zmod(q)?);
    }
    let text = read_source(arg)?;
    Ok(SemiringTable::from_json(&parse_json(&text)?)?)
}

/// Parses a comma-separated list of 1-based universe elements.
pub fn parse_assignment(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .ok()
                .filter(|&v| v >= 1)
                .map(|v| v - 1)
                .ok_or_else(|| {
                    CliError::Usage(format!("assignment entries are 1-based integers, got {s:?}"))
                })
        })
        .collect()
}
